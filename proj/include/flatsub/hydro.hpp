#ifndef FLATSUB_HYDRO_HPP
#define FLATSUB_HYDRO_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "flatsub/metric.hpp"
#include "flatsub/polynomial.hpp"
#include "flatsub/sweep.hpp"

namespace flatsub {

// Integration-time failure: CFL violation without the proceed flag, or
// non-finite values mid-run.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Periodic 1D field u(x) ∈ R^N on M equally spaced points of a unit
// circle, layout [point][component].
struct GridState {
    int components = 0;
    int points = 0;
    std::vector<double> values;

    GridState() = default;
    GridState(int n, int m) : components(n), points(m), values(static_cast<size_t>(n) * m, 0.0) {
        if (m < 16) throw std::invalid_argument("GridState: need at least 16 spatial points");
    }

    double& at(int x, int c) { return values[static_cast<size_t>(x) * components + c]; }
    double at(int x, int c) const { return values[static_cast<size_t>(x) * components + c]; }
};

double max_abs_diff(const GridState& a, const GridState& b);

// Characteristic matrix of one flow: V_α(u) = η^{-1}·Hess(ψ_α)(u), equal
// to −A_α from the Weingarten picture.
class FlowVelocity {
public:
    FlowVelocity(const Polynomial& psi_alpha, const Mat<double>& eta_contra)
        : n_(eta_contra.rows()), eta_contra_(eta_contra), hess_(psi_alpha) {
        if (psi_alpha.dim() != n_)
            throw std::invalid_argument("FlowVelocity: dimension mismatch");
    }

    int dim() const { return n_; }

    Mat<double> velocity(const std::vector<double>& u) const {
        Mat<double> omega(n_, n_), v(n_, n_);
        velocity_into(u, omega, v);
        return v;
    }

    // Allocation-free variant; both matrices must be n x n scratch.
    void velocity_into(const std::vector<double>& u, Mat<double>& omega_scratch,
                       Mat<double>& v) const {
        hess_.eval_into(u, omega_scratch);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                double acc = 0.0;
                for (int k = 0; k < n_; ++k) acc += eta_contra_(i, k) * omega_scratch(k, j);
                v(i, j) = acc;
            }
    }

private:
    int n_;
    Mat<double> eta_contra_;
    HessianEvaluator hess_;
};

struct EvolveOptions {
    double dt = 1e-3;
    int steps = 50;
    bool spectral_filter = false;      // zero Fourier modes with |k| > M/3 each step
    bool allow_cfl_violation = false;  // warn and proceed instead of aborting
    ExecPolicy policy = ExecPolicy::parallel;
};

// u_t = V(u)·u_x with classical 4th-order time stepping and 4th-order
// central differences in space. Deterministic for fixed inputs.
GridState evolve(const GridState& initial, const FlowVelocity& flow, const EvolveOptions& opt,
                 std::vector<std::string>* warnings = nullptr);

// ‖E_β(E_α(s0)) − E_α(E_β(s0))‖_∞ with identical stepping for both legs.
double commutator_defect(const GridState& initial, const FlowVelocity& flow_a,
                         const FlowVelocity& flow_b, const EvolveOptions& opt,
                         std::vector<std::string>* warnings = nullptr);

} // namespace flatsub

#endif
