#ifndef FLATSUB_TENSOR_HPP
#define FLATSUB_TENSOR_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "flatsub/rational.hpp"

namespace flatsub {

// Small dense row-major matrix. Sized for frame/metric work (n <= a few
// dozen), not for large linear algebra.
template <typename S>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols, S fill = S(0))
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    S& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const S& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    Mat operator+(const Mat& o) const {
        Mat r(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
        return r;
    }
    Mat operator-(const Mat& o) const {
        Mat r(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
        return r;
    }
    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("Mat: shape mismatch in product");
        Mat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const S& aik = (*this)(i, k);
                for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
            }
        return r;
    }
    Mat scaled(const S& s) const {
        Mat r(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * s;
        return r;
    }
    Mat transposed() const {
        Mat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    S max_abs() const {
        S m(0);
        for (const S& v : a_) {
            S av = scalar_abs(v);
            if (m < av) m = av;
        }
        return m;
    }

    bool is_symmetric() const {
        for (int i = 0; i < rows_; ++i)
            for (int j = i + 1; j < cols_; ++j)
                if (!((*this)(i, j) == (*this)(j, i))) return false;
        return true;
    }

    template <typename T>
    Mat<T> cast() const {
        Mat<T> r(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(i, j) = T(scalar_to_double((*this)(i, j)));
        return r;
    }

private:
    int rows_, cols_;
    std::vector<S> a_;
};

inline Mat<double> to_double(const Mat<Rational>& m) {
    Mat<double> r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).to_double();
    return r;
}

// Rank-3 array indexed [k][i][j]; used for structure constants c^k_{ij}
// (upper index first) and third-derivative tensors.
template <typename S>
class Ten3 {
public:
    Ten3() : n0_(0), n1_(0), n2_(0) {}
    Ten3(int n0, int n1, int n2, S fill = S(0))
        : n0_(n0), n1_(n1), n2_(n2),
          a_(static_cast<size_t>(n0) * n1 * n2, fill) {}

    int dim0() const { return n0_; }
    int dim1() const { return n1_; }
    int dim2() const { return n2_; }

    S& operator()(int k, int i, int j) {
        return a_[(static_cast<size_t>(k) * n1_ + i) * n2_ + j];
    }
    const S& operator()(int k, int i, int j) const {
        return a_[(static_cast<size_t>(k) * n1_ + i) * n2_ + j];
    }

    friend bool operator==(const Ten3& x, const Ten3& y) {
        return x.n0_ == y.n0_ && x.n1_ == y.n1_ && x.n2_ == y.n2_ && x.a_ == y.a_;
    }

    S max_abs() const {
        S m(0);
        for (const S& v : a_) {
            S av = scalar_abs(v);
            if (m < av) m = av;
        }
        return m;
    }

private:
    int n0_, n1_, n2_;
    std::vector<S> a_;
};

// Rank-4 array indexed [a][b][c][d]; residual tensors of the quadratic
// identities live here.
template <typename S>
class Ten4 {
public:
    Ten4() : n0_(0), n1_(0), n2_(0), n3_(0) {}
    Ten4(int n0, int n1, int n2, int n3, S fill = S(0))
        : n0_(n0), n1_(n1), n2_(n2), n3_(n3),
          a_(static_cast<size_t>(n0) * n1 * n2 * n3, fill) {}

    int dim0() const { return n0_; }
    int dim1() const { return n1_; }
    int dim2() const { return n2_; }
    int dim3() const { return n3_; }

    S& operator()(int a, int b, int c, int d) {
        return a_[((static_cast<size_t>(a) * n1_ + b) * n2_ + c) * n3_ + d];
    }
    const S& operator()(int a, int b, int c, int d) const {
        return a_[((static_cast<size_t>(a) * n1_ + b) * n2_ + c) * n3_ + d];
    }

    friend bool operator==(const Ten4& x, const Ten4& y) {
        return x.n0_ == y.n0_ && x.n1_ == y.n1_ && x.n2_ == y.n2_ &&
               x.n3_ == y.n3_ && x.a_ == y.a_;
    }

    S max_abs() const {
        S m(0);
        for (const S& v : a_) {
            S av = scalar_abs(v);
            if (m < av) m = av;
        }
        return m;
    }

    bool all_zero() const {
        for (const S& v : a_)
            if (!(v == S(0))) return false;
        return true;
    }

private:
    int n0_, n1_, n2_, n3_;
    std::vector<S> a_;
};

template <typename S>
using Vec = std::vector<S>;

template <typename S>
Vec<S> mat_vec(const Mat<S>& m, const Vec<S>& v) {
    if (static_cast<size_t>(m.cols()) != v.size())
        throw std::invalid_argument("mat_vec: shape mismatch");
    Vec<S> r(m.rows(), S(0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
    return r;
}

} // namespace flatsub

#endif
