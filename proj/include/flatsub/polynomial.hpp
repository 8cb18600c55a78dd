#ifndef FLATSUB_POLYNOMIAL_HPP
#define FLATSUB_POLYNOMIAL_HPP

#include <map>
#include <stdexcept>
#include <vector>

#include "flatsub/rational.hpp"
#include "flatsub/tensor.hpp"

namespace flatsub {

// Exponent vector of a monomial in u^1..u^N.
using MultiIndex = std::vector<unsigned>;

inline unsigned multi_order(const MultiIndex& m) {
    unsigned s = 0;
    for (unsigned e : m) s += e;
    return s;
}

// Sparse multivariate polynomial with exact rational coefficients.
// Invariant: no stored zero coefficients; every key has length dim().
// The coefficient map is ordered, so iteration (and hence evaluation
// order, printing, and serialization) is deterministic.
class Polynomial {
public:
    using TermMap = std::map<MultiIndex, Rational>;

    explicit Polynomial(int dim = 0) : dim_(dim) {}

    static Polynomial monomial(int dim, const MultiIndex& exps, const Rational& coeff) {
        if (static_cast<int>(exps.size()) != dim)
            throw std::invalid_argument("Polynomial: exponent length != dimension");
        Polynomial p(dim);
        if (!coeff.is_zero()) p.terms_[exps] = coeff;
        return p;
    }

    static Polynomial constant(int dim, const Rational& c) {
        return monomial(dim, MultiIndex(dim, 0), c);
    }

    int dim() const { return dim_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) {
            unsigned o = multi_order(m);
            if (o > d) d = o;
        }
        return d;
    }

    void add_term(const MultiIndex& exps, const Rational& coeff) {
        if (static_cast<int>(exps.size()) != dim_)
            throw std::invalid_argument("Polynomial: exponent length != dimension");
        auto it = terms_.find(exps);
        if (it == terms_.end()) {
            if (!coeff.is_zero()) terms_[exps] = coeff;
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        check_same_dim(a, b);
        Polynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        check_same_dim(a, b);
        Polynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        check_same_dim(a, b);
        Polynomial r(a.dim_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                MultiIndex m(a.dim_);
                for (int i = 0; i < a.dim_; ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }
    Polynomial scaled(const Rational& s) const {
        Polynomial r(dim_);
        if (s.is_zero()) return r;
        for (const auto& [m, c] : terms_) r.terms_[m] = c * s;
        return r;
    }
    Polynomial operator-() const { return scaled(Rational(-1)); }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

    // d/du^axis, exact.
    Polynomial derivative(int axis) const {
        if (axis < 0 || axis >= dim_)
            throw std::invalid_argument("Polynomial: derivative axis out of range");
        Polynomial r(dim_);
        for (const auto& [m, c] : terms_) {
            if (m[axis] == 0) continue;
            MultiIndex d = m;
            d[axis] -= 1;
            r.add_term(d, c * Rational(static_cast<long long>(m[axis])));
        }
        return r;
    }

    // Mixed partial of the given order (one entry per axis).
    Polynomial partial(const MultiIndex& order) const {
        if (static_cast<int>(order.size()) != dim_)
            throw std::invalid_argument("Polynomial: order length != dimension");
        Polynomial r = *this;
        for (int axis = 0; axis < dim_; ++axis)
            for (unsigned k = 0; k < order[axis]; ++k) r = r.derivative(axis);
        return r;
    }

    // Evaluation in the scalar type of the point: exact for Rational
    // points, on-demand float view for double points.
    template <typename S>
    S eval(const std::vector<S>& point) const {
        if (static_cast<int>(point.size()) != dim_)
            throw std::invalid_argument("Polynomial: point length != dimension");
        S acc(0);
        for (const auto& [m, c] : terms_) {
            S term = coeff_as<S>(c);
            for (int i = 0; i < dim_; ++i)
                for (unsigned k = 0; k < m[i]; ++k) term = term * point[i];
            acc = acc + term;
        }
        return acc;
    }

private:
    template <typename S>
    static S coeff_as(const Rational& c);

    static void check_same_dim(const Polynomial& a, const Polynomial& b) {
        if (a.dim_ != b.dim_)
            throw std::invalid_argument("Polynomial: dimension mismatch");
    }

    int dim_;
    TermMap terms_;
};

template <>
inline Rational Polynomial::coeff_as<Rational>(const Rational& c) { return c; }
template <>
inline double Polynomial::coeff_as<double>(const Rational& c) { return c.to_double(); }

// ∂^{|order|} p / ∂u^{order} at a point.
template <typename S>
S eval_partial(const Polynomial& p, const MultiIndex& order, const std::vector<S>& point) {
    return p.partial(order).eval(point);
}

// ψ_α = ∂φ/∂u^α for α = 1..N.
inline std::vector<Polynomial> gradient_potentials(const Polynomial& phi) {
    std::vector<Polynomial> g;
    g.reserve(phi.dim());
    for (int i = 0; i < phi.dim(); ++i) g.push_back(phi.derivative(i));
    return g;
}

// Caches the N(N+1)/2 distinct second-partial polynomials of p so grid
// sweeps do not re-differentiate per point. Symmetry of the result is
// structural: entry (i,j) and (j,i) read the same polynomial.
class HessianEvaluator {
public:
    explicit HessianEvaluator(const Polynomial& p) : dim_(p.dim()) {
        parts_.reserve(static_cast<size_t>(dim_) * (dim_ + 1) / 2);
        for (int i = 0; i < dim_; ++i) {
            Polynomial di = p.derivative(i);
            for (int j = i; j < dim_; ++j) parts_.push_back(di.derivative(j));
        }
    }

    int dim() const { return dim_; }

    const Polynomial& entry(int i, int j) const {
        if (i > j) std::swap(i, j);
        return parts_[static_cast<size_t>(i) * dim_ - static_cast<size_t>(i) * (i - 1) / 2 + (j - i)];
    }

    template <typename S>
    Mat<S> eval(const std::vector<S>& point) const {
        Mat<S> h(dim_, dim_);
        eval_into(point, h);
        return h;
    }

    // Allocation-free variant for hot loops; `h` must be dim x dim.
    template <typename S>
    void eval_into(const std::vector<S>& point, Mat<S>& h) const {
        for (int i = 0; i < dim_; ++i)
            for (int j = i; j < dim_; ++j) {
                S v = entry(i, j).eval(point);
                h(i, j) = v;
                h(j, i) = v;
            }
    }

private:
    int dim_;
    std::vector<Polynomial> parts_;
};

template <typename S>
Mat<S> hessian(const Polynomial& p, const std::vector<S>& point) {
    return HessianEvaluator(p).eval(point);
}

// Third-derivative tensor cache; stores one polynomial per i <= j <= k and
// mirrors across all index permutations on evaluation.
class ThirdTensorEvaluator {
public:
    explicit ThirdTensorEvaluator(const Polynomial& p) : dim_(p.dim()) {
        for (int i = 0; i < dim_; ++i) {
            Polynomial di = p.derivative(i);
            for (int j = i; j < dim_; ++j) {
                Polynomial dij = di.derivative(j);
                for (int k = j; k < dim_; ++k) parts_.push_back(dij.derivative(k));
            }
        }
    }

    int dim() const { return dim_; }

    const Polynomial& entry(int i, int j, int k) const {
        if (i > j) std::swap(i, j);
        if (j > k) std::swap(j, k);
        if (i > j) std::swap(i, j);
        size_t idx = 0;
        for (int a = 0; a < i; ++a) idx += tri(dim_ - a);
        for (int b = i; b < j; ++b) idx += dim_ - b;
        idx += k - j;
        return parts_[idx];
    }

    template <typename S>
    Ten3<S> eval(const std::vector<S>& point) const {
        Ten3<S> t(dim_, dim_, dim_);
        eval_into(point, t);
        return t;
    }

    template <typename S>
    void eval_into(const std::vector<S>& point, Ten3<S>& t) const {
        for (int i = 0; i < dim_; ++i)
            for (int j = i; j < dim_; ++j)
                for (int k = j; k < dim_; ++k) {
                    S v = entry(i, j, k).eval(point);
                    t(i, j, k) = v;
                    t(i, k, j) = v;
                    t(j, i, k) = v;
                    t(j, k, i) = v;
                    t(k, i, j) = v;
                    t(k, j, i) = v;
                }
    }

private:
    static size_t tri(int n) { return static_cast<size_t>(n) * (n + 1) / 2; }

    int dim_;
    std::vector<Polynomial> parts_;
};

template <typename S>
Ten3<S> third_tensor(const Polynomial& phi, const std::vector<S>& point) {
    return ThirdTensorEvaluator(phi).eval(point);
}

} // namespace flatsub

#endif
