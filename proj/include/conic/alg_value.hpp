#pragma once

#include <cmath>

#include "conic/rational.hpp"

namespace conic {

// Indicial root values have the shape  sign * (sqrt(radicand) + shift)
// with radicand >= 0 and shift in {-1, 0, +1}. When the radicand carries an
// exact rational witness, comparisons and merging are exact; otherwise they
// fall back to doubles with an absolute tolerance.
struct AlgValue {
    int sign = 1;      // +1 or -1
    Scalar radicand;   // >= 0
    int shift = 0;     // -1, 0, +1 (outside the square root)

    double value() const { return sign * (std::sqrt(radicand.d) + shift); }

    // Exact rational value when the radicand is an exact perfect square.
    std::optional<Rational> exact_rational() const {
        if (!radicand.exact) return std::nullopt;
        auto s = radicand.exact->sqrt_exact();
        if (!s) return std::nullopt;
        return Rational(sign) * (*s + Rational(shift));
    }

    Scalar to_scalar() const {
        if (auto r = exact_rational()) return Scalar(*r);
        return Scalar(value());
    }

    bool is_exact() const { return radicand.exact.has_value(); }
};

namespace detail {

// sign(L + M*sqrt(y)) for exact rationals, y >= 0.
inline int sign_lin_sqrt(const Rational& L, const Rational& M, const Rational& y) {
    if (M.is_zero() || y.is_zero()) return L.sign();
    if (M.sign() > 0) {
        if (L.sign() >= 0) return +1;
        return (M * M * y - L * L).sign();  // L < 0: compare |M|sqrt(y) vs |L|
    }
    if (L.sign() <= 0) return -1;
    return (L * L - M * M * y).sign();
}

// sign(A*sqrt(x) + B*sqrt(y) + C), A,B in {-1,0,+1}, x,y >= 0, all rational.
inline int sign_two_sqrts(int A, const Rational& x, int B, const Rational& y, const Rational& C) {
    const int su = (x.is_zero() || A == 0) ? 0 : A;        // sign of A*sqrt(x)
    const int sv = sign_lin_sqrt(C, Rational(B), y);       // sign of B*sqrt(y)+C
    if (su == 0) return sv;
    if (sv == 0) return su;
    if (su == sv) return su;
    // opposite signs: compare u^2 = x against v^2 = B^2 y + C^2 + 2BC sqrt(y)
    Rational L = x - Rational(B * B) * y - C * C;
    Rational M = Rational(-2 * B) * C;
    int diff = sign_lin_sqrt(L, M, y);  // sign(u^2 - v^2)
    if (diff == 0) return 0;
    return su * diff;
}

}  // namespace detail

// Three-way comparison; exact when both radicands are exact rationals,
// tolerance-based (|a-b| <= tol treated equal) otherwise.
inline int compare(const AlgValue& a, const AlgValue& b, double tol = 1e-9) {
    if (a.radicand.exact && b.radicand.exact) {
        // a - b = s_a sqrt(ra) - s_b sqrt(rb) + (s_a d_a - s_b d_b)
        Rational C = Rational(a.sign * a.shift) - Rational(b.sign * b.shift);
        return detail::sign_two_sqrts(a.sign, *a.radicand.exact, -b.sign, *b.radicand.exact, C);
    }
    double va = a.value(), vb = b.value();
    if (std::abs(va - vb) <= tol) return 0;
    return va < vb ? -1 : +1;
}

inline bool alg_equal(const AlgValue& a, const AlgValue& b, double tol = 1e-9) {
    return compare(a, b, tol) == 0;
}

inline AlgValue negated(const AlgValue& v) {
    AlgValue r = v;
    r.sign = -r.sign;
    return r;
}

}  // namespace conic
