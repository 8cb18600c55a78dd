#ifndef FLATSUB_RATIONAL_HPP
#define FLATSUB_RATIONAL_HPP

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace flatsub {

// Exact rational scalar on 64-bit numerator/denominator, reduced form,
// denominator > 0. Intermediates run through __int128; results that do not
// fit back into 64 bits throw std::overflow_error. Desk-scale problem data
// (small coefficients, grid points with small denominators) stays far from
// the limit.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        __int128 nn = n, dd = d;
        if (dd < 0) { nn = -nn; dd = -dd; }
        reduce_assign(nn, dd);
    }

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string to_string() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                    i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                    i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Accepts "p", "-p", "p/q" with optional whitespace padding. Anything
    // else (decimal points, exponents) is rejected.
    static Rational parse(const std::string& text);

    // Every finite double is a dyadic rational; converts exactly or throws
    // if the exact form does not fit in 64 bits.
    static Rational from_double_exact(double x);

private:
    using i128 = __int128;

    static long long narrow(i128 v) {
        if (v > std::numeric_limits<long long>::max() ||
            v < std::numeric_limits<long long>::min())
            throw std::overflow_error("Rational: 64-bit overflow");
        return static_cast<long long>(v);
    }

    static i128 gcd128(i128 a, i128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    void reduce_assign(i128 n, i128 d) {
        if (n == 0) {
            num_ = 0;
            den_ = 1;
            return;
        }
        i128 g = gcd128(n, d);
        num_ = narrow(n / g);
        den_ = narrow(d / g);
    }

    static Rational make(i128 n, i128 d) {
        Rational r;
        if (d < 0) { n = -n; d = -d; }
        r.reduce_assign(n, d);
        return r;
    }

    long long num_;
    long long den_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational Rational::parse(const std::string& text) {
    size_t b = text.find_first_not_of(" \t");
    size_t e = text.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("Rational: empty string");
    std::string s = text.substr(b, e - b + 1);
    auto parse_int = [](const std::string& t) -> long long {
        if (t.empty()) throw std::invalid_argument("Rational: bad integer '" + t + "'");
        size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
        if (i == t.size()) throw std::invalid_argument("Rational: bad integer '" + t + "'");
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9')
                throw std::invalid_argument("Rational: bad integer '" + t + "'");
        errno = 0;
        char* end = nullptr;
        long long v = std::strtoll(t.c_str(), &end, 10);
        if (errno != 0 || end != t.c_str() + t.size())
            throw std::invalid_argument("Rational: bad integer '" + t + "'");
        return v;
    };
    size_t slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_int(s));
    return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

inline Rational Rational::from_double_exact(double x) {
    if (x != x || x == std::numeric_limits<double>::infinity() ||
        x == -std::numeric_limits<double>::infinity())
        throw std::invalid_argument("Rational: non-finite double");
    if (x == 0.0) return Rational(0);
    // Peel off powers of two until the mantissa is integral.
    double m = x;
    i128 den = 1;
    int guard = 0;
    while (m != static_cast<double>(static_cast<long long>(m))) {
        m *= 2.0;
        den *= 2;
        if (++guard > 1075) throw std::overflow_error("Rational: double does not fit");
        if (den > std::numeric_limits<long long>::max())
            throw std::overflow_error("Rational: double does not fit");
    }
    return make(i128(static_cast<long long>(m)), den);
}

// Scalar adapters shared by the templated kernels (Rational or double).
inline double scalar_to_double(const Rational& r) { return r.to_double(); }
inline double scalar_to_double(double x) { return x; }
inline Rational scalar_abs(const Rational& r) { return abs(r); }
inline double scalar_abs(double x) { return x < 0 ? -x : x; }

} // namespace flatsub

#endif
