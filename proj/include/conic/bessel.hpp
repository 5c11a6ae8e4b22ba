#pragma once

namespace conic {

// Evaluation record for the public single-function API.
struct BesselEval {
    double order;
    double argument;
    double value;
    double abs_error_bound;
};

// Joint evaluation of I_nu, K_nu and derivatives at real order nu >= 0.
// log_i / log_k are always finite within the supported range; the plain
// doubles carry ok = false when the value leaves double range (the caller
// decides whether that is an error).
struct BesselIK {
    double log_i = 0.0, log_k = 0.0;
    double i = 0.0, ip = 0.0, k = 0.0, kp = 0.0;
    bool i_ok = false, ip_ok = false, k_ok = false, kp_ok = false;
};

// Supported range: nu in [0, 60], x in [1e-6, 700].
// Throws RangeError outside it.
BesselIK bessel_ik(double nu, double x);

// Throw RangeError when the value itself is not representable in double
// (overflow/underflow is reported, never silently saturated).
BesselEval bessel_i(double nu, double x);
BesselEval bessel_k(double nu, double x);

// log I_nu(x), log K_nu(x); finite throughout the supported range.
double log_bessel_i(double nu, double x);
double log_bessel_k(double nu, double x);

}  // namespace conic
