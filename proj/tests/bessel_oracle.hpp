#pragma once

// Extended-precision reference implementations for testing the Bessel
// evaluator. Deliberately independent of src/bessel.cpp: I from the
// ascending power series, K from the integral representation
// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt, both in long double.

#include <cmath>

#include "conic/quadrature.hpp"

namespace oracle {

// Ascending series; all terms positive, no cancellation.
inline long double bessel_i_series(long double nu, long double x) {
    long double t = expl(nu * logl(x / 2) - lgammal(nu + 1));
    long double sum = t;
    long double q = x * x / 4;
    for (int k = 0; k < 100000; ++k) {
        t *= q / ((k + 1) * (nu + k + 1));
        sum += t;
        if (t < sum * 1e-25L) break;
    }
    return sum;
}

inline long double log_bessel_i_series(long double nu, long double x) {
    long double lt0 = nu * logl(x / 2) - lgammal(nu + 1);
    long double t = 1.0L, sum = 1.0L;
    long double q = x * x / 4;
    for (int k = 0; k < 100000; ++k) {
        t *= q / ((k + 1) * (nu + k + 1));
        sum += t;
        if (t < sum * 1e-25L) break;
    }
    return lt0 + logl(sum);
}

inline long double bessel_k_integral(long double nu, long double x) {
    auto f = [&](long double t) { return expl(-x * coshl(t)) * coshl(nu * t); };
    // find a cutoff T past which the integrand is negligible
    long double peak = f(0);
    long double tstar = asinhl(nu / x);
    peak = std::max(peak, f(tstar));
    long double T = std::max(tstar + 1, (long double)1);
    while (T < 80 && f(T) > peak * 1e-45L) T *= 1.25L;
    return conic::adaptive_simpson<long double>(f, 0.0L, T, peak * T * 2e-18L, 30);
}

inline long double log_bessel_k_integral(long double nu, long double x) {
    return logl(bessel_k_integral(nu, x));
}

}  // namespace oracle
