#ifndef FLATSUB_PROBLEM_HPP
#define FLATSUB_PROBLEM_HPP

#include <optional>
#include <string>
#include <vector>

#include "flatsub/metric.hpp"
#include "flatsub/polynomial.hpp"

namespace flatsub {

// Input-side failure: malformed file, inconsistent dimensions, degenerate
// metric, float literal in rational mode. The CLI maps this to exit code 2.
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ArithmeticMode { rational, floating };

struct Tolerances {
    double algebra = 1e-10; // pure-algebra float residuals
    double ode = 1e-8;      // ODE-integration checks
    double fd = 1e-4;       // finite-difference verifications
};

// Hypercube evaluation domain: center, half-width, points per axis.
struct Domain {
    std::vector<Rational> base;
    Rational half_width = Rational(1, 2);
    int grid = 5;
};

// Full problem data in flat coordinates: dimensions, the two constant
// metrics (both variance flavors precomputed exactly), the potentials, the
// evaluation domain, and tolerance overrides.
struct ProblemSpec {
    int n = 0; // tangent dimension
    int l = 0; // codimension

    MetricMatrix eta_contra; // η^{ij}
    MetricMatrix eta_cov;    // η_{ij} = (η^{ij})⁻¹
    MetricMatrix mu_contra;  // μ^{αβ}
    MetricMatrix mu_cov;     // μ_{αβ}
    bool mu_is_eta_scale = false;
    Rational mu_scale;       // c in μ^{αβ} = c·η^{αβ}, when symbolic

    std::optional<Polynomial> phi; // potential case (forces l == n)
    std::vector<Polynomial> psi;   // always populated; gradient of phi in the potential case

    Domain domain;
    Tolerances tol;
};

// Regular lattice over the domain hypercube, axis values exact.
class DomainGrid {
public:
    DomainGrid() : dim_(0), points_(0), total_(0) {}
    DomainGrid(const Domain& d, int dim, int points_override = 0);

    int dim() const { return dim_; }
    int points_per_axis() const { return points_; }
    size_t size() const { return total_; }
    const std::vector<Rational>& axis(int i) const { return axes_[i]; }
    Rational step() const { return step_; }

    std::vector<int> multi_index(size_t linear) const {
        std::vector<int> m(dim_);
        for (int i = dim_ - 1; i >= 0; --i) {
            m[i] = static_cast<int>(linear % points_);
            linear /= points_;
        }
        return m;
    }
    size_t linear_index(const std::vector<int>& m) const {
        size_t idx = 0;
        for (int i = 0; i < dim_; ++i) idx = idx * points_ + static_cast<size_t>(m[i]);
        return idx;
    }

    std::vector<Rational> point(size_t linear) const {
        std::vector<int> m = multi_index(linear);
        std::vector<Rational> p(dim_);
        for (int i = 0; i < dim_; ++i) p[i] = axes_[i][m[i]];
        return p;
    }
    std::vector<double> point_double(size_t linear) const {
        std::vector<int> m = multi_index(linear);
        std::vector<double> p(dim_);
        for (int i = 0; i < dim_; ++i) p[i] = axes_[i][m[i]].to_double();
        return p;
    }

private:
    int dim_;
    int points_;
    size_t total_;
    Rational step_;
    std::vector<std::vector<Rational>> axes_;
};

// JSON problem-file loader. In rational mode, non-integral JSON floats are
// rejected; write values as integers or "p/q" strings to serve both modes.
ProblemSpec load_problem_file(const std::string& path, ArithmeticMode mode);
ProblemSpec load_problem_text(const std::string& text, ArithmeticMode mode);

// FNV-1a 64-bit hash of the file bytes, in hex.
std::string file_fingerprint(const std::string& path);

} // namespace flatsub

#endif
