#include "conic/mode_kernel.hpp"

#include <algorithm>
#include <cmath>

#include "conic/bessel.hpp"
#include "conic/errors.hpp"
#include "conic/indicial.hpp"
#include "conic/quadrature.hpp"

namespace conic {

double mode_green(double nu, double a, double b) {
    if (a > b) std::swap(a, b);
    BesselIK lo = bessel_ik(nu, a);
    BesselIK hi = bessel_ik(nu, b);
    if (lo.i_ok && hi.k_ok) {
        double direct = lo.i * hi.k;
        if (direct > 0.0 && std::isfinite(direct)) return direct;
    }
    return std::exp(lo.log_i + hi.log_k);
}

ModeSumResult model_kernel(const CrossSection& cs, int q, double kappa, double kappa_prime,
                           double R, double tail_tol) {
    if (!(kappa > 0) || !(kappa_prime > 0)) throw InvalidInput("kappa, kappa' must be positive");
    if (kappa == kappa_prime)
        throw InvalidInput("model kernel is evaluated off-diagonal only (kappa != kappa')");

    IndicialSet set = indicial_set(cs, q, R);
    const double a = std::min(kappa, kappa_prime), b = std::max(kappa, kappa_prime);

    ModeSumResult out;
    double count = 0.0;         // cumulative rank over positive roots
    double density_coef = 0.0;  // Weyl-type bound N(nu) <= C (1+nu)^{n-1}
    const int n = cs.n();
    for (const auto& m : set.roots) {
        double nu = m.value.value();
        if (nu <= 1e-12) continue;
        ModeTerm t{nu, m.multiplicity, mode_green(nu, a, b)};
        out.total += t.rank * t.g;
        out.terms.push_back(t);
        count += m.multiplicity;
        density_coef = std::max(density_coef, count / std::pow(1.0 + nu, n - 1));
    }
    if (out.terms.empty()) density_coef = 1.0;

    // Tail estimate: g_nu <= (a/b)^nu / (2 nu), root density extrapolated from
    // the computed range with a factor-2 safety margin.
    const double ratio = a / b;
    double tail = 0.0;
    double prevN = 2.0 * density_coef * std::pow(1.0 + R, n - 1);
    for (int k = 0; k < 400; ++k) {
        double nu_hi = R + k + 1.0;
        double Nk = 2.0 * density_coef * std::pow(1.0 + nu_hi, n - 1);
        double block = (Nk - prevN) * std::pow(ratio, R + k) / (2.0 * (R + k));
        tail += block;
        prevN = Nk;
        if (block < tail * 1e-14) break;
    }
    out.tail_bound = tail;
    if (tail > tail_tol)
        throw InsufficientTruncation("mode sum tail estimate exceeds requested tolerance");
    return out;
}

namespace {

// max |(-(k d_k)^2 + nu^2 + k^2) g| over sample points, FD step h
double max_ode_residual(double nu, double kp, double h, double lo, double hi, int samples) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        double k = lo + (hi - lo) * i / (samples - 1);
        double gm = mode_green(nu, k - h, kp);
        double g0 = mode_green(nu, k, kp);
        double gp = mode_green(nu, k + h, kp);
        double d2 = (gp - 2 * g0 + gm) / (h * h);
        double d1 = (gp - gm) / (2 * h);
        double res = -(k * k * d2 + k * d1) + (nu * nu + k * k) * g0;
        worst = std::max(worst, std::abs(res));
    }
    return worst;
}

}  // namespace

OdeResidualReport verify_mode_ode(double nu, double kappa_prime, double h, double lo, double hi,
                                  int sample_points) {
    if (!(lo > 0) || !(hi > lo)) throw InvalidInput("need 0 < lo < hi");
    if (kappa_prime >= lo - 2 * h && kappa_prime <= hi + 2 * h)
        throw InvalidInput("ODE residual grid touches the diagonal kappa = kappa'");
    OdeResidualReport rep;
    rep.residual_h = max_ode_residual(nu, kappa_prime, h, lo, hi, sample_points);
    rep.residual_h2 = max_ode_residual(nu, kappa_prime, h / 2, lo, hi, sample_points);
    rep.residual_h4 = max_ode_residual(nu, kappa_prime, h / 4, lo, hi, sample_points);
    double o1 = std::log2(rep.residual_h / rep.residual_h2);
    double o2 = std::log2(rep.residual_h2 / rep.residual_h4);
    rep.order = 0.5 * (o1 + o2);
    rep.max_residual = rep.residual_h4;
    return rep;
}

double wronskian_jump(double nu, double kappa0) {
    if (!(kappa0 > 0)) throw InvalidInput("kappa0 must be positive");
    // [g(k0+h) - 2 g(k0) + g(k0-h)] / h = jump + c1 h + c2 h^2 + ...
    const int levels = 8;
    double h0 = 0.04 * std::min(1.0, kappa0);
    double hs[levels], val[levels];
    double g0 = mode_green(nu, kappa0, kappa0);
    for (int i = 0; i < levels; ++i) {
        double h = h0 / (1 << i);
        hs[i] = h;
        val[i] = (mode_green(nu, kappa0 + h, kappa0) - 2 * g0 +
                  mode_green(nu, kappa0 - h, kappa0)) /
                 h;
    }
    // Neville extrapolation to h -> 0
    for (int j = 1; j < levels; ++j)
        for (int i = levels - 1; i >= j; --i)
            val[i] = val[i] + (val[i] - val[i - 1]) * hs[i] / (hs[i - j] - hs[i]);
    return val[levels - 1];
}

ZfLimitReport zf_limit_check(double nu, double s, std::vector<double> kappas) {
    if (!(nu > 0) || !(s > 0)) throw InvalidInput("zf limit needs nu > 0, s > 0");
    ZfLimitReport rep;
    rep.limit = std::exp(-nu * std::abs(std::log(s))) / (2.0 * nu);
    std::sort(kappas.begin(), kappas.end(), std::greater<double>());
    double prev_dev = kInf;
    for (double k : kappas) {
        double dev = std::abs(mode_green(nu, k, s * k) - rep.limit);
        rep.kappas.push_back(k);
        rep.deviations.push_back(dev);
        if (k < 0.1) {
            if (dev > prev_dev) rep.monotone_below_0p1 = false;
            prev_dev = dev;
        }
    }
    return rep;
}

MomentResult ktilde_moment(double nu) {
    if (!(nu > 0)) throw InvalidInput("moment requires nu > 0");
    MomentResult r;
    r.closed_form = std::sqrt(M_PI) * std::exp(std::lgamma(nu + 0.5) - std::lgamma(nu));
    const double log_norm = std::lgamma(nu) + (nu - 1.0) * M_LN2;
    auto f = [&](double k) {
        if (k < 1e-6) return 1.0;  // kappa^nu Ktilde_nu -> 1 at 0
        return std::exp(nu * std::log(k) + log_bessel_k(nu, k) - log_norm);
    };
    double T = std::max(60.0, 20.0 + 8.0 * nu);
    double tol = 1e-12 * r.closed_form;
    double q1 = adaptive_simpson<double>(f, 0.0, T, tol);
    double q2 = adaptive_simpson<double>(f, 0.0, T, tol / 10);
    if (std::abs(q1 - q2) > 100 * tol)
        throw RangeError("moment quadrature failed to converge");
    r.quadrature = q2;
    r.rel_err = std::abs(r.quadrature - r.closed_form) / r.closed_form;
    return r;
}

}  // namespace conic
