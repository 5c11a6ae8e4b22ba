#pragma once

#include <cmath>
#include <stdexcept>

namespace conic {

namespace detail {

template <typename Real>
Real simpson_step(Real a, Real fa, Real b, Real fb, Real fm) {
    return (b - a) / Real(6) * (fa + Real(4) * fm + fb);
}

template <typename Real, typename F>
Real adaptive_simpson_rec(F& f, Real a, Real fa, Real b, Real fb, Real m, Real fm, Real whole,
                          Real tol, int depth) {
    Real lm = (a + m) / Real(2), rm = (m + b) / Real(2);
    Real flm = f(lm), frm = f(rm);
    Real left = simpson_step(a, fa, m, fm, flm);
    Real right = simpson_step(m, fm, b, fb, frm);
    Real delta = left + right - whole;
    if (depth <= 0) return left + right + delta / Real(15);
    if (std::abs(delta) <= Real(15) * tol) return left + right + delta / Real(15);
    return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, tol / Real(2), depth - 1) +
           adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, tol / Real(2), depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
template <typename Real, typename F>
Real adaptive_simpson(F f, Real a, Real b, Real tol, int max_depth = 48) {
    if (!(b > a)) return Real(0);
    Real m = (a + b) / Real(2);
    Real fa = f(a), fb = f(b), fm = f(m);
    Real whole = detail::simpson_step(a, fa, b, fb, fm);
    return detail::adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

}  // namespace conic
