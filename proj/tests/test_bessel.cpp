#include <cmath>

#include "bessel_oracle.hpp"
#include "conic/bessel.hpp"
#include "conic/errors.hpp"
#include "doctest.h"

using namespace conic;

namespace {

// High-precision reference values (mpmath, 22 digits). nu and x are doubles,
// matching the binary arguments the table was generated at.
struct Ref {
    double nu, x;
    long double i, k;
};
const Ref kRefs[] = {
    {0, 1, 1.266065877752008335598L, 0.4210244382407083333356L},
    {0.75, 2, 1.833458802628832928078L, 0.1279029786291790263303L},
    {1, 0.001, 0.0005000000625000026145751L, 999.9962381560855534612L},
    {1, 0.002, 0.001000000500000083354157L, 499.9931694565956385139L},
    {0.5, 1, 0.9376748882454876467173L, 0.4610685044478945584396L},
    {1.5, 2, 1.099473188633109675514L, 0.1799066579520921710521L},
    {2.5, 0.7, 0.02258060601918935495542L, 8.486341592801384998138L},
    {6.2, 30, 408372490301.9111229849L, 3.997186479587630165607e-14L},
    {12.125, 0.05, 5.718837009024032759967e-29L, 7.210689922080859598864e+26L},
    {33.3, 40, 24366340656.32885885382L, 3.94249921253767044924e-13L},
    {60, 0.01, 1.042378844856595044443e-220L, 7.994534097348159128539e+217L},
    {60, 700, 1.168705211598706368861e+301L, 6.089442771467785666617e-305L},
    {0, 700, 1.529593347671873736316e+302L, 4.669776431685376880986e-306L},
    {0.25, 650, 3.061465089835675845486e+280L, 2.512623588205023041329e-284L},
    {41.5, 3.5, 6.061594050080633629581e-41L, 1.980592487688599707101e+38L},
    {7, 1e-06, 1.550099206349254298792e-48L, 4.607999999999809459645e+46L},
    {19.75, 123.4, 2.88352332306417812038e+51L, 1.387528912323180136429e-54L},
};

double rel_err(long double got, long double want) {
    return (double)fabsl((got - want) / want);
}

}  // namespace

TEST_CASE("the test oracle itself reproduces the frozen high-precision table") {
    for (const Ref& r : kRefs) {
        CHECK(rel_err(oracle::bessel_i_series(r.nu, r.x), r.i) < 2e-16);
        CHECK(rel_err(oracle::bessel_k_integral(r.nu, r.x), r.k) < 1e-15);
    }
}

TEST_CASE("implementation matches the frozen table") {
    for (const Ref& r : kRefs) {
        BesselIK v = bessel_ik(r.nu, r.x);
        REQUIRE(v.i_ok);
        REQUIRE(v.k_ok);
        CHECK(rel_err(v.i, r.i) < 5e-12);
        CHECK(rel_err(v.k, r.k) < 5e-12);
        CHECK(std::abs(v.log_i - (double)logl(r.i)) < 1e-11 * std::max(1.0, std::abs(v.log_i)));
        CHECK(std::abs(v.log_k - (double)logl(r.k)) < 1e-11 * std::max(1.0, std::abs(v.log_k)));
    }
}

TEST_CASE("implementation vs oracle across the supported range") {
    const double nus[] = {0.0, 0.3, 0.5, 1.0, 1.7, 2.5, 5.0, 9.75, 17.2, 30.0, 47.5, 60.0};
    const double xs[] = {1e-6, 1e-4, 0.02, 0.5, 1.0, 1.999, 2.0, 3.7, 10.0, 55.0, 240.0, 700.0};
    for (double nu : nus) {
        for (double x : xs) {
            BesselIK v = bessel_ik(nu, x);
            long double li = oracle::log_bessel_i_series(nu, x);
            long double lk = oracle::log_bessel_k_integral(nu, x);
            CHECK(std::abs(v.log_i - (double)li) < 5e-12 * std::max(1.0, std::abs((double)li)));
            CHECK(std::abs(v.log_k - (double)lk) < 5e-12 * std::max(1.0, std::abs((double)lk)));
            if (v.i_ok) CHECK(rel_err(v.i, oracle::bessel_i_series(nu, x)) < 5e-12);
            if (v.k_ok) CHECK(rel_err(v.k, oracle::bessel_k_integral(nu, x)) < 5e-12);
        }
    }
}

TEST_CASE("reported error bounds hold against the oracle") {
    const double nus[] = {0.0, 0.5, 2.5, 11.0, 33.3, 60.0};
    const double xs[] = {0.01, 0.9, 2.0, 8.0, 100.0, 700.0};
    for (double nu : nus)
        for (double x : xs) {
            BesselEval ev = bessel_i(nu, x);
            long double truth = oracle::bessel_i_series(nu, x);
            CHECK((double)fabsl(ev.value - truth) <= ev.abs_error_bound);
            CHECK(ev.abs_error_bound <= 1e-10 * std::max(1.0, std::abs(ev.value)));
            BesselEval ek = bessel_k(nu, x);
            long double ktruth = oracle::bessel_k_integral(nu, x);
            CHECK((double)fabsl(ek.value - ktruth) <= ek.abs_error_bound);
            CHECK(ek.abs_error_bound <= 1e-10 * std::max(1.0, std::abs(ek.value)));
        }
}

TEST_CASE("half-integer closed forms") {
    // K_{1/2}(x) = sqrt(pi/2x) e^-x ; I_{1/2}(x) = sqrt(2/pi x) sinh x
    for (double x : {0.1, 1.0, 2.0, 7.5, 30.0}) {
        double k12 = std::sqrt(M_PI / (2 * x)) * std::exp(-x);
        double i12 = std::sqrt(2 / (M_PI * x)) * std::sinh(x);
        CHECK(bessel_k(0.5, x).value == doctest::Approx(k12).epsilon(1e-12));
        CHECK(bessel_i(0.5, x).value == doctest::Approx(i12).epsilon(1e-12));
    }
    // K_{3/2}(x) = sqrt(pi/2x) e^-x (1 + 1/x)
    for (double x : {0.5, 2.0, 11.0}) {
        double k32 = std::sqrt(M_PI / (2 * x)) * std::exp(-x) * (1 + 1 / x);
        CHECK(bessel_k(1.5, x).value == doctest::Approx(k32).epsilon(1e-12));
    }
    CHECK(bessel_k(0.5, 1.0).value == doctest::Approx(0.46106850444789456).epsilon(1e-13));
    CHECK(bessel_i(0.0, 1.0).value == doctest::Approx(1.2660658777520084).epsilon(1e-13));
}

TEST_CASE("Wronskian identity I K' - I' K = -1/x on a grid") {
    for (double nu = 0.0; nu <= 60.0; nu += 4.7) {
        for (double x : {0.03, 0.4, 1.0, 2.0, 5.0, 19.0, 150.0, 640.0}) {
            BesselIK v = bessel_ik(nu, x);
            if (!(v.i_ok && v.k_ok && v.ip_ok && v.kp_ok)) continue;
            double w = v.i * v.kp - v.ip * v.k;
            CHECK(std::abs(w + 1.0 / x) <= 1e-10 / x);
        }
    }
    BesselIK v = bessel_ik(0.75, 2.0);
    CHECK(v.i * v.kp - v.ip * v.k == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("three-term recurrence K_{nu+1} = K_{nu-1} + (2nu/x) K_nu") {
    for (double nu : {1.0, 2.2, 7.5, 20.0, 41.0}) {
        for (double x : {0.5, 2.0, 9.0, 80.0}) {
            double km = bessel_k(nu - 1, x).value;
            double k0 = bessel_k(nu, x).value;
            double kp = bessel_k(nu + 1, x).value;
            CHECK(kp == doctest::Approx(km + (2 * nu / x) * k0).epsilon(1e-9));
        }
    }
}

TEST_CASE("out-of-range and non-representable evaluations are reported") {
    CHECK_THROWS_AS(bessel_ik(-0.5, 1.0), RangeError);
    CHECK_THROWS_AS(bessel_ik(61.0, 1.0), RangeError);
    CHECK_THROWS_AS(bessel_ik(1.0, 1e-7), RangeError);
    CHECK_THROWS_AS(bessel_ik(1.0, 701.0), RangeError);
    // inside the parameter range but the value leaves double range
    CHECK_THROWS_AS(bessel_i(60.0, 1e-5), RangeError);   // underflow
    CHECK_THROWS_AS(bessel_k(60.0, 1e-5), RangeError);   // overflow
    // the log-space view still works there
    BesselIK v = bessel_ik(60.0, 1e-5);
    CHECK_FALSE(v.i_ok);
    CHECK_FALSE(v.k_ok);
    CHECK(v.log_i == doctest::Approx((double)oracle::log_bessel_i_series(60.0L, 1e-5L))
                         .epsilon(1e-12));
    CHECK(v.log_k == doctest::Approx((double)oracle::log_bessel_k_integral(60.0L, 1e-5L))
                         .epsilon(1e-12));
}
