#ifndef FLATSUB_FROBENIUS_HPP
#define FLATSUB_FROBENIUS_HPP

#include <initializer_list>
#include <vector>

#include "flatsub/metric.hpp"
#include "flatsub/polynomial.hpp"
#include "flatsub/tensor.hpp"

namespace flatsub {

// Max-abs tracker with first-occurrence (row-major scan) tie-breaking, so
// the reported argmax index tuple is deterministic.
template <typename S>
struct MaxAbs {
    S value = S(0);
    std::vector<int> indices;

    void consider(const S& v, std::initializer_list<int> idx) {
        S av = scalar_abs(v);
        if (indices.empty() || value < av) {
            value = av;
            indices = idx;
        }
    }
};

template <typename S>
Mat<S> metric_view(const MetricMatrix& m);

template <>
inline Mat<Rational> metric_view<Rational>(const MetricMatrix& m) { return m.entries(); }
template <>
inline Mat<double> metric_view<double>(const MetricMatrix& m) { return m.as_double(); }

// Structure constants of the pointwise algebra, c^k_{ij} = η^{ks} Φ_{sij},
// stored [k][i][j]. Lower-index symmetry is inherited from Φ.
template <typename S>
struct StructureConstants {
    std::vector<S> point;
    Ten3<S> c;
};

template <typename S>
StructureConstants<S> structure_constants(const ThirdTensorEvaluator& phi3,
                                          const Mat<S>& eta_contra,
                                          const std::vector<S>& point) {
    int n = phi3.dim();
    if (eta_contra.rows() != n)
        throw std::invalid_argument("structure_constants: metric/potential dimension mismatch");
    Ten3<S> t3 = phi3.eval(point);
    StructureConstants<S> out;
    out.point = point;
    out.c = Ten3<S>(n, n, n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                S v(0);
                for (int s = 0; s < n; ++s) v += eta_contra(k, s) * t3(s, i, j);
                out.c(k, i, j) = v;
                out.c(k, j, i) = v;
            }
    return out;
}

template <typename S>
StructureConstants<S> structure_constants(const Polynomial& phi,
                                          const Mat<S>& eta_contra,
                                          const std::vector<S>& point) {
    return structure_constants(ThirdTensorEvaluator(phi), eta_contra, point);
}

// (e_i ∘ e_j) ∘ e_k − e_i ∘ (e_j ∘ e_k), component m.
template <typename S>
Ten4<S> associativity_residual_tensor(const Ten3<S>& c) {
    int n = c.dim0();
    Ten4<S> r(n, n, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int m = 0; m < n; ++m) {
                    S v(0);
                    for (int s = 0; s < n; ++s)
                        v += c(s, i, j) * c(m, s, k) - c(s, j, k) * c(m, i, s);
                    r(i, j, k, m) = v;
                }
    return r;
}

template <typename S>
MaxAbs<S> associativity_residual(const Ten3<S>& c) {
    Ten4<S> t = associativity_residual_tensor(c);
    int n = c.dim0();
    MaxAbs<S> m;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int mm = 0; mm < n; ++mm) m.consider(t(i, j, k, mm), {i, j, k, mm});
    return m;
}

// ⟨e_i ∘ e_j, e_k⟩ − ⟨e_i, e_j ∘ e_k⟩ against the covariant form.
template <typename S>
MaxAbs<S> invariance_residual(const Ten3<S>& c, const Mat<S>& eta_cov) {
    int n = c.dim0();
    if (eta_cov.rows() != n)
        throw std::invalid_argument("invariance_residual: dimension mismatch");
    MaxAbs<S> m;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                S v(0);
                for (int s = 0; s < n; ++s)
                    v += c(s, i, j) * eta_cov(s, k) - c(s, j, k) * eta_cov(i, s);
                m.consider(v, {i, j, k});
            }
    return m;
}

// Associativity identity for the potential directly: entry (i,j,m,n) is
// Σ_{k,l} Φ_{ijk} η^{kl} Φ_{lmn} − Φ_{imk} η^{kl} Φ_{ljn}.
template <typename S>
Ten4<S> wdvv_residual_tensor(const Ten3<S>& t3, const Mat<S>& eta_contra) {
    int dim = t3.dim0();
    Ten4<S> r(dim, dim, dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int m = 0; m < dim; ++m)
                for (int n = 0; n < dim; ++n) {
                    S v(0);
                    for (int k = 0; k < dim; ++k)
                        for (int l = 0; l < dim; ++l)
                            v += (t3(i, j, k) * t3(l, m, n) - t3(i, m, k) * t3(l, j, n)) *
                                 eta_contra(k, l);
                    r(i, j, m, n) = v;
                }
    return r;
}

// Fused max over the residual tensor, no rank-4 materialization.
template <typename S>
MaxAbs<S> wdvv_residual_max(const Ten3<S>& t3, const Mat<S>& eta_contra) {
    int dim = t3.dim0();
    MaxAbs<S> m;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int mm = 0; mm < dim; ++mm)
                for (int n = 0; n < dim; ++n) {
                    S v(0);
                    for (int k = 0; k < dim; ++k)
                        for (int l = 0; l < dim; ++l)
                            v += (t3(i, j, k) * t3(l, mm, n) - t3(i, mm, k) * t3(l, j, n)) *
                                 eta_contra(k, l);
                    m.consider(v, {i, j, mm, n});
                }
    return m;
}

template <typename S>
MaxAbs<S> wdvv_residual(const ThirdTensorEvaluator& phi3, const Mat<S>& eta_contra,
                        const std::vector<S>& point) {
    if (eta_contra.rows() != phi3.dim())
        throw std::invalid_argument("wdvv_residual: dimension mismatch");
    return wdvv_residual_max(phi3.eval(point), eta_contra);
}

// Shape operators A_α = −η⁻¹·Hess(ψ_α); entry (k,i) = −Σ_j η^{kj} ψ_{α,ji}.
template <typename S>
struct WeingartenSet {
    std::vector<S> point;
    std::vector<Mat<S>> ops;
};

template <typename S>
WeingartenSet<S> weingarten_operators(const std::vector<HessianEvaluator>& psi_hessians,
                                      const Mat<S>& eta_contra,
                                      const std::vector<S>& point) {
    int n = eta_contra.rows();
    WeingartenSet<S> out;
    out.point = point;
    out.ops.reserve(psi_hessians.size());
    for (const HessianEvaluator& h : psi_hessians) {
        if (h.dim() != n)
            throw std::invalid_argument("weingarten_operators: dimension mismatch");
        Mat<S> omega = h.eval(point);
        Mat<S> a(n, n);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) {
                S v(0);
                for (int j = 0; j < n; ++j) v += eta_contra(k, j) * omega(j, i);
                a(k, i) = S(0) - v;
            }
        out.ops.push_back(std::move(a));
    }
    return out;
}

template <typename S>
WeingartenSet<S> weingarten_operators(const std::vector<Polynomial>& psi,
                                      const Mat<S>& eta_contra,
                                      const std::vector<S>& point) {
    std::vector<HessianEvaluator> hs;
    hs.reserve(psi.size());
    for (const Polynomial& p : psi) hs.emplace_back(p);
    return weingarten_operators(hs, eta_contra, point);
}

// max over α<β of ‖A_α A_β − A_β A_α‖_∞.
template <typename S>
MaxAbs<S> weingarten_commutator_defect(const std::vector<Mat<S>>& ops) {
    MaxAbs<S> m;
    m.consider(S(0), {-1, -1, -1, -1});
    int l = static_cast<int>(ops.size());
    for (int a = 0; a < l; ++a)
        for (int b = a + 1; b < l; ++b) {
            Mat<S> comm = ops[a] * ops[b] - ops[b] * ops[a];
            for (int i = 0; i < comm.rows(); ++i)
                for (int j = 0; j < comm.cols(); ++j) m.consider(comm(i, j), {a, b, i, j});
        }
    return m;
}

} // namespace flatsub

#endif
