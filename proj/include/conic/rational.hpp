#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace conic {

// Exact rational over int64 with checked arithmetic. Denominator > 0,
// gcd-normalized. Throws std::overflow_error when a result leaves int64.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    double to_double() const { return double(num_) / double(den_); }
    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    Rational operator-() const { return Rational(-num_, den_, no_norm{}); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(checked(i128(a.num_) * b.den_ + i128(b.num_) * a.den_),
                        checked(i128(a.den_) * b.den_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(checked(i128(a.num_) * b.num_), checked(i128(a.den_) * b.den_));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return Rational(checked(i128(a.num_) * b.den_), checked(i128(a.den_) * b.num_));
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Exact square root if this is a perfect square of a rational.
    std::optional<Rational> sqrt_exact() const {
        if (num_ < 0) return std::nullopt;
        long long sn = isqrt(num_), sd = isqrt(den_);
        if (sn * sn != num_ || sd * sd != den_) return std::nullopt;
        return Rational(sn, sd, no_norm{});
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    struct no_norm {};
    Rational(long long n, long long d, no_norm) : num_(n), den_(d) {}
    using i128 = __int128;

    static long long checked(i128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
        return (long long)v;
    }
    static long long isqrt(long long v) {
        if (v < 0) return -1;
        long long r = (long long)std::sqrt((double)v);
        while (r > 0 && r * r > v) --r;
        while ((r + 1) * (r + 1) <= v) ++r;
        return r;
    }
    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_, den_;
};

// Exact-when-possible scalar: a double that optionally carries an exact
// rational witness. Arithmetic keeps exactness when both operands have it
// (degrading silently to double-only on int64 overflow).
struct Scalar {
    std::optional<Rational> exact;
    double d = 0.0;

    Scalar() = default;
    Scalar(const Rational& r) : exact(r), d(r.to_double()) {}
    explicit Scalar(double v) : d(v) {}
    static Scalar inexact(double v) { return Scalar(v); }

    bool is_exact() const { return exact.has_value(); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) { return combine(a, b, '+'); }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return combine(a, b, '-'); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) { return combine(a, b, '*'); }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return combine(a, b, '/'); }

    // Exact equality when both exact, else |a-b| <= tol.
    static bool close(const Scalar& a, const Scalar& b, double tol = 1e-9) {
        if (a.exact && b.exact) return *a.exact == *b.exact;
        return std::abs(a.d - b.d) <= tol;
    }

private:
    static Scalar combine(const Scalar& a, const Scalar& b, char op) {
        Scalar r;
        switch (op) {
            case '+': r.d = a.d + b.d; break;
            case '-': r.d = a.d - b.d; break;
            case '*': r.d = a.d * b.d; break;
            default:  r.d = a.d / b.d; break;
        }
        if (a.exact && b.exact) {
            try {
                switch (op) {
                    case '+': r.exact = *a.exact + *b.exact; break;
                    case '-': r.exact = *a.exact - *b.exact; break;
                    case '*': r.exact = *a.exact * *b.exact; break;
                    default:  r.exact = *a.exact / *b.exact; break;
                }
                r.d = r.exact->to_double();
            } catch (const std::overflow_error&) {
                r.exact.reset();
            }
        }
        return r;
    }
};

}  // namespace conic
