#include "conic/bessel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "conic/errors.hpp"

namespace conic {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 30000;
constexpr double kXmin = 2.0;  // series/continued-fraction crossover
// Rescale threshold for the order recurrences (power of two keeps the
// bookkeeping exact).
constexpr double kBig = 0x1p512;
constexpr double kBigInv = 0x1p-512;
constexpr int kBigExp = 512;

// Taylor coefficients of 1/Gamma(1+x) = sum d_k x^k (A&S 6.1.34).
constexpr double kInvGammaTaylor[] = {
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
};

// Temme's Gamma1(mu) = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu) and
// Gamma2(mu) = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2 for |mu| <= 1/2.
void temme_gammas(double mu, double& gam1, double& gam2, double& inv_gam_1p,
                  double& inv_gam_1m) {
    inv_gam_1p = 1.0 / std::tgamma(1.0 + mu);
    inv_gam_1m = 1.0 / std::tgamma(1.0 - mu);
    gam2 = 0.5 * (inv_gam_1m + inv_gam_1p);
    if (std::abs(mu) < 1e-4) {
        // the difference quotient cancels near 0; use the odd Taylor part
        const auto& d = kInvGammaTaylor;
        double mu2 = mu * mu;
        gam1 = -(d[1] + mu2 * (d[3] + mu2 * (d[5] + mu2 * d[7])));
    } else {
        gam1 = (inv_gam_1m - inv_gam_1p) / (2.0 * mu);
    }
}

struct CoreResult {
    // I_nu = i_mant * 2^i_exp2 * e^i_expe ; K likewise, mantissas O(1).
    double i_mant, ip_over_i;  // f_nu = I'_nu / I_nu
    double k_mant, k1_mant;    // K_nu and K_{nu+1} at a common scale
    long i_exp2, k_exp2;
    double i_expe, k_expe;
};

// Temme/Steed evaluation of I_nu, K_nu with exact power-of-two rescaling in
// the order recurrences: Temme's series for small x, Steed's CF2 otherwise,
// CF1 plus Miller-style backward recurrence for I, normalized through the
// Wronskian.
CoreResult bessel_core(double nu, double x) {
    const double xi = 1.0 / x, xi2 = 2.0 / x;
    const int nl = (int)(nu + 0.5);
    const double mu = nu - nl;  // |mu| <= 1/2
    const double mu2 = mu * mu;

    // CF1 (modified Lentz) for the ratio r = I_{nu+1}/I_nu; keeping the nu/x
    // head term out of the fraction avoids cancellation in the Wronskian
    // normalization below.
    double h = 1e-300, c = h, d = 0.0;
    double b = 0.0;
    for (int i = 1;; ++i) {
        b = xi2 * (nu + i);
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) <= kEps) break;
        if (i >= kMaxIter) throw RangeError("bessel: CF1 failed to converge");
    }
    const double rat_nu = h;  // I_{nu+1}/I_nu
    const double f_nu = nu * xi + rat_nu;

    // Backward recurrence from nu down to mu; values grow, rescale by 2^512.
    double ril = 1.0, ripl = f_nu;
    double ril_up = 0.0;  // unnormalized I at order mu+1
    long m_exp2 = 0;
    double fact = nu * xi;
    for (int l = nl; l >= 1; --l) {
        double riltemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * riltemp + ril;
        ril_up = ril;
        ril = riltemp;
        if (std::abs(ril) > kBig) {
            ril *= kBigInv;
            ripl *= kBigInv;
            ril_up *= kBigInv;
            m_exp2 += kBigExp;
        }
    }
    // I_{mu+1}/I_mu, free of subtractive cancellation
    const double rat_mu = (nl >= 1) ? ril_up / ril : rat_nu;

    // K_mu and K_{mu+1}; k_expe carries the e^{-x} factor for x >= 2.
    double rkmu, rk1, k_expe = 0.0;
    if (x < kXmin) {
        const double x2 = 0.5 * x;
        const double pimu = M_PI * mu;
        const double fct = (std::abs(pimu) < 1e-14) ? 1.0 : pimu / std::sin(pimu);
        double dd = -std::log(x2);
        double e = mu * dd;
        const double fact2 = (std::abs(e) < 1e-14) ? 1.0 : std::sinh(e) / e;
        double gam1, gam2, gampl, gammi;
        temme_gammas(mu, gam1, gam2, gampl, gammi);
        double ff = fct * (gam1 * std::cosh(e) + gam2 * fact2 * dd);
        double sum = ff;
        e = std::exp(e);
        double p = 0.5 * e / gampl;    // (x/2)^{-mu} Gamma(1+mu) / 2
        double q = 0.5 / (e * gammi);  // (x/2)^{+mu} Gamma(1-mu) / 2
        double cc = 1.0;
        const double d2 = x2 * x2;
        double sum1 = p;
        for (int i = 1;; ++i) {
            ff = (i * ff + p + q) / (i * i - mu2);
            cc *= d2 / i;
            p /= (i - mu);
            q /= (i + mu);
            double del = cc * ff;
            sum += del;
            sum1 += cc * (p - i * ff);
            if (std::abs(del) < std::abs(sum) * kEps) break;
            if (i >= kMaxIter) throw RangeError("bessel: Temme series failed to converge");
        }
        rkmu = sum;
        rk1 = sum1 * xi2;
    } else {
        // Steed's CF2; yields e^x K_mu.
        double bb = 2.0 * (1.0 + x);
        double dd = 1.0 / bb;
        double delh = dd;
        h = delh;
        double q1 = 0.0, q2 = 1.0;
        const double a1 = 0.25 - mu2;
        double q = a1, cc = a1, a = -a1;
        double s = 1.0 + q * delh;
        for (int i = 2;; ++i) {
            a -= 2 * (i - 1);
            cc = -a * cc / i;
            double qnew = (q1 - bb * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += cc * qnew;
            bb += 2.0;
            dd = 1.0 / (bb + a * dd);
            delh = (bb * dd - 1.0) * delh;
            h += delh;
            double dels = q * delh;
            s += dels;
            if (std::abs(dels / s) <= kEps) break;
            if (i >= kMaxIter) throw RangeError("bessel: CF2 failed to converge");
        }
        h = a1 * h;
        rkmu = std::sqrt(M_PI / (2.0 * x)) / s;  // = e^x K_mu
        rk1 = rkmu * (mu + x + 0.5 - h) * xi;
        k_expe = -x;
    }

    // I_mu from the product identity I_mu K_{mu+1} + I_{mu+1} K_mu = 1/x,
    // all terms positive (same scale as K).
    double rimu_scaled = xi / (rk1 + rat_mu * rkmu);  // = I_mu * e^{+k_expe}

    // Forward recurrence K_mu -> K_nu.
    long k_exp2 = 0;
    for (int i = 1; i <= nl; ++i) {
        double rktemp = (mu + i) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
        if (std::abs(rk1) > kBig) {
            rk1 *= kBigInv;
            rkmu *= kBigInv;
            k_exp2 += kBigExp;
        }
    }

    CoreResult r;
    r.i_mant = rimu_scaled / ril;  // I_nu = I_mu * ril1/(ril 2^m), ril1 = 1
    r.ip_over_i = f_nu;
    r.i_exp2 = -m_exp2;
    r.i_expe = -k_expe;  // I carries the inverse of K's exponential scale
    r.k_mant = rkmu;
    r.k1_mant = rk1;
    r.k_exp2 = k_exp2;
    r.k_expe = k_expe;
    return r;
}

// mant * 2^e2 * e^ee as a double; ok=false when outside double range.
double reconstruct(double mant, long e2, double ee, bool& ok) {
    double l = std::log(std::abs(mant)) + e2 * M_LN2 + ee;
    if (l > 709.0 || l < -744.0) {
        ok = false;
        return std::numeric_limits<double>::quiet_NaN();
    }
    ok = true;
    if (e2 == 0 && ee == 0.0) return mant;         // exact
    if (ee == 0.0) return std::ldexp(mant, (int)e2);  // exact scaling
    return std::copysign(std::exp(l), mant);
}

void check_range(double nu, double x) {
    if (!(nu >= 0.0 && nu <= 60.0) || !(x >= 1e-6 && x <= 700.0))
        throw RangeError("bessel: (nu, x) outside supported range [0,60] x [1e-6,700]");
}

}  // namespace

BesselIK bessel_ik(double nu, double x) {
    check_range(nu, x);
    CoreResult c = bessel_core(nu, x);
    BesselIK out;
    out.log_i = std::log(c.i_mant) + c.i_exp2 * M_LN2 + c.i_expe;
    out.log_k = std::log(c.k_mant) + c.k_exp2 * M_LN2 + c.k_expe;
    out.i = reconstruct(c.i_mant, c.i_exp2, c.i_expe, out.i_ok);
    out.k = reconstruct(c.k_mant, c.k_exp2, c.k_expe, out.k_ok);
    if (out.i_ok) {
        out.ip = c.ip_over_i * out.i;
        out.ip_ok = std::isfinite(out.ip);
    }
    if (out.k_ok) {
        // K'_nu = (nu/x) K_nu - K_{nu+1}
        bool ok1 = false;
        double k1 = reconstruct(c.k1_mant, c.k_exp2, c.k_expe, ok1);
        if (ok1) {
            out.kp = (nu / x) * out.k - k1;
            out.kp_ok = std::isfinite(out.kp);
        }
    }
    return out;
}

double log_bessel_i(double nu, double x) { return bessel_ik(nu, x).log_i; }
double log_bessel_k(double nu, double x) { return bessel_ik(nu, x).log_k; }

BesselEval bessel_i(double nu, double x) {
    BesselIK r = bessel_ik(nu, x);
    if (!r.i_ok)
        throw RangeError("I_" + std::to_string(nu) + "(" + std::to_string(x) +
                         ") is not representable in double (log value " +
                         std::to_string(r.log_i) + ")");
    return {nu, x, r.i, 5e-12 * std::max(1.0, std::abs(r.i))};
}

BesselEval bessel_k(double nu, double x) {
    BesselIK r = bessel_ik(nu, x);
    if (!r.k_ok)
        throw RangeError("K_" + std::to_string(nu) + "(" + std::to_string(x) +
                         ") is not representable in double (log value " +
                         std::to_string(r.log_k) + ")");
    return {nu, x, r.k, 5e-12 * std::max(1.0, std::abs(r.k))};
}

}  // namespace conic
