#ifndef FLATSUB_LAX_HPP
#define FLATSUB_LAX_HPP

#include <utility>
#include <vector>

#include "flatsub/frobenius.hpp"
#include "flatsub/polynomial.hpp"
#include "flatsub/sweep.hpp"
#include "flatsub/tensor.hpp"

namespace flatsub {

struct SpectralParams {
    double lambda = 0.0;
    double rho = 0.0;
};

// State of the auxiliary linear problem: p_k plays ∂a/∂u^k, b_α rides
// along the normals. The scalar a itself is a quadrature away and never
// enters the system.
struct LaxState {
    std::vector<double> p; // length N
    std::vector<double> b; // length L

    static LaxState zero(int n, int l) { return {std::vector<double>(n, 0.0), std::vector<double>(l, 0.0)}; }
    static LaxState basis(int n, int l, int k) {
        LaxState s = zero(n, l);
        if (k < n) s.p[k] = 1.0;
        else s.b[k - n] = 1.0;
        return s;
    }
};

double max_abs_diff(const LaxState& a, const LaxState& b);

// Coefficient data for transporting (p, b): the second-form evaluators and
// both contravariant metrics in float form.
class LaxSystem {
public:
    LaxSystem(const std::vector<Polynomial>& psi, const Mat<double>& eta_contra,
              const Mat<double>& mu_contra);

    int tangent_dim() const { return n_; }
    int codim() const { return l_; }

    // d(state)/ds along velocity vel at parameter point u.
    LaxState derivative(const std::vector<double>& u, const std::vector<double>& vel,
                        const LaxState& s, const SpectralParams& params) const;

    // Classical 4th-order one-step integration along the polyline, steps of
    // length h per segment with a final partial step for the remainder.
    LaxState transport(const LaxState& start, const std::vector<std::vector<double>>& path,
                       const SpectralParams& params, double h) const;

    // Transports every canonical basis state around the axis-aligned
    // rectangle spanned by h_loop*(e_i, e_j) at `base` and returns the max
    // deviation from the initial state over states and components.
    double holonomy_defect(const std::vector<double>& base, double h_loop, int axis_i,
                           int axis_j, const SpectralParams& params, int substeps,
                           ExecPolicy policy = ExecPolicy::parallel) const;

private:
    int n_, l_;
    Mat<double> eta_contra_;
    Mat<double> mu_contra_;
    std::vector<HessianEvaluator> forms_;
};

// Pointwise compatibility identities of the linear problem. First value:
// μ-contracted products symmetric in the lower pair; second: η-contracted
// products symmetric in the outer pair. Entrywise these are reindexings of
// the Gauss/Ricci tensors, so the max values agree exactly.
template <typename S>
std::pair<MaxAbs<S>, MaxAbs<S>> consistency_residual(const std::vector<Mat<S>>& forms,
                                                     const Mat<S>& eta_contra,
                                                     const Mat<S>& mu_contra) {
    int l = static_cast<int>(forms.size());
    int n = eta_contra.rows();
    if (mu_contra.rows() != l)
        throw std::invalid_argument("consistency_residual: mu dimension != number of forms");
    MaxAbs<S> first, second;
    first.consider(S(0), {-1, -1, -1, -1});
    second.consider(S(0), {-1, -1, -1, -1});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int s = 0; s < n; ++s) {
                    S v(0);
                    for (int a = 0; a < l; ++a)
                        for (int b = 0; b < l; ++b)
                            v += mu_contra(a, b) * (forms[a](i, j) * forms[b](k, s) -
                                                    forms[a](i, k) * forms[b](j, s));
                    first.consider(v, {i, j, k, s});
                }
    for (int a = 0; a < l; ++a)
        for (int g = 0; g < l; ++g)
            for (int i = 0; i < n; ++i)
                for (int m = 0; m < n; ++m) {
                    S v(0);
                    for (int k = 0; k < n; ++k)
                        for (int j = 0; j < n; ++j)
                            v += eta_contra(k, j) * (forms[a](i, j) * forms[g](k, m) -
                                                     forms[a](m, j) * forms[g](k, i));
                    second.consider(v, {a, g, i, m});
                }
    return {first, second};
}

} // namespace flatsub

#endif
