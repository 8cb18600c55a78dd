#ifndef FLATSUB_METRIC_HPP
#define FLATSUB_METRIC_HPP

#include <cmath>
#include <stdexcept>
#include <utility>

#include "flatsub/rational.hpp"
#include "flatsub/tensor.hpp"

namespace flatsub {

struct DegenerateMetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Constant symmetric nondegenerate matrix with exact rational entries and a
// derived float view. Symmetry is checked at construction; nondegeneracy on
// demand (exact det != 0, or |det| > 1e-12 * max|entry|^n in float terms).
class MetricMatrix {
public:
    MetricMatrix() = default;

    explicit MetricMatrix(Mat<Rational> entries) : m_(std::move(entries)) {
        if (m_.rows() != m_.cols())
            throw std::invalid_argument("MetricMatrix: not square");
        if (!m_.is_symmetric())
            throw std::invalid_argument("MetricMatrix: not symmetric");
    }

    static MetricMatrix identity(int n) {
        return MetricMatrix(Mat<Rational>::identity(n));
    }

    // Ones on the antidiagonal, zeros elsewhere.
    static MetricMatrix antidiagonal(int n) {
        Mat<Rational> m(n, n);
        for (int i = 0; i < n; ++i) m(i, n - 1 - i) = Rational(1);
        return MetricMatrix(m);
    }

    int dim() const { return m_.rows(); }
    const Mat<Rational>& entries() const { return m_; }
    const Rational& operator()(int i, int j) const { return m_(i, j); }
    Mat<double> as_double() const { return to_double(m_); }

    MetricMatrix scaled(const Rational& c) const { return MetricMatrix(m_.scaled(c)); }

    Rational determinant() const {
        // Plain fraction elimination; n stays small.
        int n = dim();
        Mat<Rational> a = m_;
        Rational det(1);
        for (int col = 0; col < n; ++col) {
            int pivot = -1;
            for (int row = col; row < n; ++row)
                if (!a(row, col).is_zero()) { pivot = row; break; }
            if (pivot < 0) return Rational(0);
            if (pivot != col) {
                for (int j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
                det = -det;
            }
            det *= a(col, col);
            for (int row = col + 1; row < n; ++row) {
                Rational f = a(row, col) / a(col, col);
                for (int j = col; j < n; ++j) a(row, j) -= f * a(col, j);
            }
        }
        return det;
    }

    bool is_nondegenerate() const { return !determinant().is_zero(); }

    void require_nondegenerate() const {
        if (determinant().is_zero())
            throw DegenerateMetricError("MetricMatrix: degenerate (det = 0)");
    }

    // Exact Gauss-Jordan inverse.
    MetricMatrix inverse() const {
        int n = dim();
        Mat<Rational> a = m_;
        Mat<Rational> inv = Mat<Rational>::identity(n);
        for (int col = 0; col < n; ++col) {
            int pivot = -1;
            for (int row = col; row < n; ++row)
                if (!a(row, col).is_zero()) { pivot = row; break; }
            if (pivot < 0)
                throw DegenerateMetricError("MetricMatrix: degenerate (det = 0)");
            if (pivot != col)
                for (int j = 0; j < n; ++j) {
                    std::swap(a(pivot, j), a(col, j));
                    std::swap(inv(pivot, j), inv(col, j));
                }
            Rational p = a(col, col);
            for (int j = 0; j < n; ++j) {
                a(col, j) /= p;
                inv(col, j) /= p;
            }
            for (int row = 0; row < n; ++row) {
                if (row == col || a(row, col).is_zero()) continue;
                Rational f = a(row, col);
                for (int j = 0; j < n; ++j) {
                    a(row, j) -= f * a(col, j);
                    inv(row, j) -= f * inv(col, j);
                }
            }
        }
        return MetricMatrix(inv);
    }

    // Signature by congruence reduction (Lagrange/Jacobi style), exact.
    // Returns {positive count, negative count}; zero count is impossible
    // for a nondegenerate form.
    std::pair<int, int> signature() const {
        int n = dim();
        Mat<Rational> a = m_;
        int pos = 0, neg = 0;
        for (int col = 0; col < n; ++col) {
            if (a(col, col).is_zero()) {
                // Find j with a(col, j) != 0 and fold row/column j in to
                // create a nonzero diagonal pivot.
                int j = -1;
                for (int k = col + 1; k < n; ++k)
                    if (!a(col, k).is_zero()) { j = k; break; }
                if (j < 0) continue; // zero row: contributes nothing (degenerate input)
                for (int k = 0; k < n; ++k) a(col, k) += a(j, k);
                for (int k = 0; k < n; ++k) a(k, col) += a(k, j);
            }
            Rational p = a(col, col);
            if (p.sign() > 0) ++pos;
            else if (p.sign() < 0) ++neg;
            for (int row = col + 1; row < n; ++row) {
                if (a(row, col).is_zero()) continue;
                Rational f = a(row, col) / p;
                for (int k = col; k < n; ++k) a(row, k) -= f * a(col, k);
                for (int k = col; k < n; ++k) a(k, row) -= f * a(k, col);
            }
        }
        return {pos, neg};
    }

private:
    Mat<Rational> m_;
};

// Float-path inverse with partial pivoting plus the configured
// nondegeneracy threshold |det| > eps_scale * max|entry|^n.
Mat<double> invert_metric_float(const Mat<double>& m, double eps_scale = 1e-12);

inline Mat<double> invert_metric_float(const Mat<double>& m, double eps_scale) {
    int n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("invert_metric_float: not square");
    Mat<double> a = m;
    Mat<double> inv = Mat<double>::identity(n);
    double max_entry = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) max_entry = std::max(max_entry, std::fabs(m(i, j)));
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (std::fabs(a(row, col)) > std::fabs(a(pivot, col))) pivot = row;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
            det = -det;
        }
        det *= a(col, col);
        if (a(col, col) == 0.0)
            throw DegenerateMetricError("invert_metric_float: singular matrix");
        double p = a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (int row = 0; row < n; ++row) {
            if (row == col) continue;
            double f = a(row, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                a(row, j) -= f * a(col, j);
                inv(row, j) -= f * inv(col, j);
            }
        }
    }
    double threshold = eps_scale;
    for (int i = 0; i < n; ++i) threshold *= max_entry;
    if (std::fabs(det) <= threshold)
        throw DegenerateMetricError("invert_metric_float: |det| below nondegeneracy threshold");
    return inv;
}

} // namespace flatsub

#endif
