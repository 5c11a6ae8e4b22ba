#pragma once

#include <vector>

#include "conic/cross_section.hpp"

namespace conic {

// One positive indicial mode's contribution to the bf0 model kernel.
struct ModeTerm {
    double nu;
    int rank;   // dim E_nu
    double g;   // I_nu(min) K_nu(max)
};

struct ModeSumResult {
    double total = 0.0;       // sum rank * g over 0 < nu <= R
    double tail_bound = 0.0;  // estimated mass of the modes beyond R
    std::vector<ModeTerm> terms;
};

// g_nu(a, b) = I_nu(min(a,b)) K_nu(max(a,b)); log-safe for extreme scales.
double mode_green(double nu, double a, double b);

// Mode sum of Eq-level model resolvent at (kappa, kappa'), indicial roots to
// radius R. Off-diagonal only. Throws InsufficientTruncation when the tail
// estimate exceeds tail_tol.
ModeSumResult model_kernel(const CrossSection& cs, int q, double kappa, double kappa_prime,
                           double R, double tail_tol = kInf);

struct OdeResidualReport {
    double residual_h = 0.0, residual_h2 = 0.0, residual_h4 = 0.0;  // max norms
    double order = 0.0;       // observed convergence order (log2 of ratios, averaged)
    double max_residual = 0.0;  // at the finest step
};

// Applies the per-mode operator -(kappa d/dkappa)^2 + nu^2 + kappa^2 to
// g_nu(., kappa') by central differences on [lo, hi] and reports the
// residual decay under step halving.
OdeResidualReport verify_mode_ode(double nu, double kappa_prime, double h, double lo, double hi,
                                  int sample_points = 72);

// Jump of d/dkappa g_nu across the diagonal kappa = kappa0, estimated by
// Richardson-extrapolated one-sided differences; equals -1/kappa0.
double wronskian_jump(double nu, double kappa0);

struct ZfLimitReport {
    double limit = 0.0;  // e^{-nu |log s|} / (2 nu)
    std::vector<double> kappas;
    std::vector<double> deviations;
    bool monotone_below_0p1 = true;  // deviations decrease once kappa < 0.1
};

// Deviation of g_nu(kappa, s*kappa) from the zf/bf0 corner kernel as kappa -> 0.
ZfLimitReport zf_limit_check(double nu, double s, std::vector<double> kappas);

struct MomentResult {
    double quadrature;
    double closed_form;  // sqrt(pi) Gamma(nu+1/2) / Gamma(nu)
    double rel_err;
};

// int_0^inf kappa^nu Ktilde_nu(kappa) dkappa with
// Ktilde_nu = K_nu / (Gamma(nu) 2^{nu-1}).
MomentResult ktilde_moment(double nu);

}  // namespace conic
