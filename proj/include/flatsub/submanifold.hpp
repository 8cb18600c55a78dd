#ifndef FLATSUB_SUBMANIFOLD_HPP
#define FLATSUB_SUBMANIFOLD_HPP

#include <vector>

#include "flatsub/frobenius.hpp"
#include "flatsub/metric.hpp"
#include "flatsub/polynomial.hpp"
#include "flatsub/tensor.hpp"

namespace flatsub {

// Second fundamental forms at a point: ω_α = Hess(ψ_α).
template <typename S>
struct SecondFormSet {
    std::vector<S> point;
    std::vector<Mat<S>> forms;
};

template <typename S>
SecondFormSet<S> second_forms(const std::vector<HessianEvaluator>& psi_hessians,
                              const std::vector<S>& point) {
    SecondFormSet<S> out;
    out.point = point;
    out.forms.reserve(psi_hessians.size());
    for (const HessianEvaluator& h : psi_hessians) out.forms.push_back(h.eval(point));
    return out;
}

template <typename S>
SecondFormSet<S> second_forms(const std::vector<Polynomial>& psi, const std::vector<S>& point) {
    std::vector<HessianEvaluator> hs;
    hs.reserve(psi.size());
    for (const Polynomial& p : psi) hs.emplace_back(p);
    return second_forms(hs, point);
}

// Curvature of the induced metric expressed through the forms; flatness
// demands it vanish. Entry [i][j][k][l] = Σ_{α,β} μ^{αβ}
// (ω_{α,ik} ω_{β,jl} − ω_{α,il} ω_{β,jk}).
template <typename S>
Ten4<S> gauss_residual_tensor(const std::vector<Mat<S>>& forms, const Mat<S>& mu_contra) {
    int l = static_cast<int>(forms.size());
    if (mu_contra.rows() != l)
        throw std::invalid_argument("gauss_residual_tensor: mu dimension != number of forms");
    int n = l > 0 ? forms[0].rows() : 0;
    Ten4<S> r(n, n, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int m = 0; m < n; ++m) {
                    S v(0);
                    for (int a = 0; a < l; ++a)
                        for (int b = 0; b < l; ++b)
                            v += mu_contra(a, b) * (forms[a](i, k) * forms[b](j, m) -
                                                    forms[a](i, m) * forms[b](j, k));
                    r(i, j, k, m) = v;
                }
    return r;
}

// Flat-normal-connection condition. Entry [α][β][k][l] = Σ_{i,j} η^{ij}
// (ω_{α,ik} ω_{β,jl} − ω_{α,il} ω_{β,jk}).
template <typename S>
Ten4<S> ricci_residual_tensor(const std::vector<Mat<S>>& forms, const Mat<S>& eta_contra) {
    int l = static_cast<int>(forms.size());
    int n = eta_contra.rows();
    Ten4<S> r(l, l, n, n);
    for (int a = 0; a < l; ++a)
        for (int b = 0; b < l; ++b)
            for (int k = 0; k < n; ++k)
                for (int m = 0; m < n; ++m) {
                    S v(0);
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j)
                            v += eta_contra(i, j) * (forms[a](i, k) * forms[b](j, m) -
                                                     forms[a](i, m) * forms[b](j, k));
                    r(a, b, k, m) = v;
                }
    return r;
}

template <typename S>
MaxAbs<S> tensor_max(const Ten4<S>& t) {
    MaxAbs<S> m;
    m.consider(S(0), {-1, -1, -1, -1});
    for (int a = 0; a < t.dim0(); ++a)
        for (int b = 0; b < t.dim1(); ++b)
            for (int c = 0; c < t.dim2(); ++c)
                for (int d = 0; d < t.dim3(); ++d) m.consider(t(a, b, c, d), {a, b, c, d});
    return m;
}

template <typename S>
MaxAbs<S> gauss_residual(const SecondFormSet<S>& sf, const Mat<S>& mu_contra) {
    return tensor_max(gauss_residual_tensor(sf.forms, mu_contra));
}

template <typename S>
MaxAbs<S> ricci_residual(const SecondFormSet<S>& sf, const Mat<S>& eta_contra) {
    return tensor_max(ricci_residual_tensor(sf.forms, eta_contra));
}

// A set of symmetric polynomial-valued 2-forms; lets the integrability
// check run on forms that are not Hessians of anything.
using PolyMatrix = std::vector<std::vector<Polynomial>>;

inline std::vector<PolyMatrix> hessian_form_polynomials(const std::vector<Polynomial>& psi) {
    std::vector<PolyMatrix> out;
    for (const Polynomial& p : psi) {
        int n = p.dim();
        PolyMatrix m(n, std::vector<Polynomial>(n, Polynomial(n)));
        for (int i = 0; i < n; ++i) {
            Polynomial di = p.derivative(i);
            for (int j = i; j < n; ++j) {
                Polynomial dij = di.derivative(j);
                m[i][j] = dij;
                m[j][i] = dij;
            }
        }
        out.push_back(std::move(m));
    }
    return out;
}

// Integrability of the forms: ∂ω_{α,ij}/∂u^k − ∂ω_{α,ik}/∂u^j, handled by
// exact polynomial differentiation. Identically zero whenever the forms
// are Hessians (third partials commute); kept as a tripwire for any
// non-Hessian form source.
class CodazziEvaluator {
public:
    explicit CodazziEvaluator(const std::vector<PolyMatrix>& forms) {
        l_ = static_cast<int>(forms.size());
        n_ = l_ > 0 ? static_cast<int>(forms[0].size()) : 0;
        for (int a = 0; a < l_; ++a)
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j)
                    for (int k = j + 1; k < n_; ++k)
                        resid_.push_back(forms[a][i][j].derivative(k) -
                                         forms[a][i][k].derivative(j));
    }

    template <typename S>
    MaxAbs<S> eval(const std::vector<S>& point) const {
        MaxAbs<S> m;
        m.consider(S(0), {-1, -1, -1, -1});
        size_t idx = 0;
        for (int a = 0; a < l_; ++a)
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j)
                    for (int k = j + 1; k < n_; ++k)
                        m.consider(resid_[idx++].eval(point), {a, i, j, k});
        return m;
    }

    bool identically_zero() const {
        for (const Polynomial& p : resid_)
            if (!p.is_zero()) return false;
        return true;
    }

private:
    int l_, n_;
    std::vector<Polynomial> resid_;
};

template <typename S>
MaxAbs<S> codazzi_residual(const std::vector<Polynomial>& psi, const std::vector<S>& point) {
    return CodazziEvaluator(hessian_form_polynomials(psi)).eval(point);
}

// Potential-case identity: with ψ_α = ∂Φ/∂u^α and μ^{αβ} = c η^{αβ}, the
// Gauss tensor equals c times the Ricci tensor entrywise, and the
// associativity tensor W satisfies W(i,j,m,n) = R(j,m,i,n). Holds for
// arbitrary Φ, solution or not; exact deviation 0 expected in rational
// arithmetic.
template <typename S>
struct ReductionCheck {
    S max_deviation = S(0);
    bool exact_match = true;
};

template <typename S>
ReductionCheck<S> reduction_check(const ThirdTensorEvaluator& phi3, const Mat<S>& eta_contra,
                                  const S& c, const std::vector<std::vector<S>>& points) {
    if (c == S(0)) throw std::invalid_argument("reduction_check: c must be nonzero");
    int n = phi3.dim();
    ReductionCheck<S> out;
    for (const std::vector<S>& point : points) {
        Ten3<S> t3 = phi3.eval(point);
        std::vector<Mat<S>> forms(n, Mat<S>(n, n));
        for (int a = 0; a < n; ++a)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) forms[a](i, j) = t3(a, i, j);
        Mat<S> mu = eta_contra.scaled(c);
        Ten4<S> gauss = gauss_residual_tensor(forms, mu);
        Ten4<S> ricci = ricci_residual_tensor(forms, eta_contra);
        Ten4<S> wdvv = wdvv_residual_tensor(t3, eta_contra);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int m = 0; m < n; ++m) {
                        S d1 = scalar_abs(gauss(i, j, k, m) - ricci(i, j, k, m) * c);
                        S d2 = scalar_abs(wdvv(i, j, k, m) - ricci(j, k, i, m));
                        if (out.max_deviation < d1) out.max_deviation = d1;
                        if (out.max_deviation < d2) out.max_deviation = d2;
                    }
    }
    out.exact_match = out.max_deviation == S(0);
    return out;
}

} // namespace flatsub

#endif
