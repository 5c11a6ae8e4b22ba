#include <cmath>

#include "bessel_oracle.hpp"
#include "conic/errors.hpp"
#include "conic/mode_kernel.hpp"
#include "doctest.h"

using namespace conic;

TEST_CASE("mode kernel symmetry and positivity") {
    for (double nu : {0.5, 1.0, 3.0, 7.5}) {
        for (auto [a, b] : {std::pair{0.3, 1.7}, {2.0, 0.2}, {5.0, 5.5}}) {
            double g1 = mode_green(nu, a, b);
            double g2 = mode_green(nu, b, a);
            CHECK(g1 == g2);  // exact: same min/max branch
            CHECK(g1 > 0.0);
        }
    }
}

TEST_CASE("mode kernel decays like K_nu for large second argument") {
    for (double nu : {1.0, 2.5}) {
        double r = mode_green(nu, 0.4, 10.0) / mode_green(nu, 0.4, 5.0);
        CHECK(r < std::exp(-4.0));
    }
}

TEST_CASE("model kernel on the sphere vs high-precision oracle") {
    CrossSection cs = sphere_preset(4, 30);
    ModeSumResult res = model_kernel(cs, 2, 0.5, 1.0, 6.0);

    // oracle: recompute each term with the long-double series/integral oracle
    long double expected = 0.0L;
    for (const auto& t : res.terms) {
        long double g =
            oracle::bessel_i_series(t.nu, 0.5L) * oracle::bessel_k_integral(t.nu, 1.0L);
        expected += t.rank * g;
    }
    CHECK(res.total == doctest::Approx((double)expected).epsilon(1e-11));
    CHECK(res.total > 0.0);
    // per-mode breakdown is retrievable and sorted by nu
    REQUIRE(res.terms.size() >= 4);
    for (size_t i = 1; i < res.terms.size(); ++i) CHECK(res.terms[i].nu > res.terms[i - 1].nu);

    // swapping kappa and kappa' changes nothing
    ModeSumResult swapped = model_kernel(cs, 2, 1.0, 0.5, 6.0);
    CHECK(swapped.total == res.total);
}

TEST_CASE("mode sum truncation tail is honored empirically") {
    CrossSection cs = sphere_preset(4, 40);
    ModeSumResult at6 = model_kernel(cs, 2, 0.5, 1.0, 6.0);
    ModeSumResult at12 = model_kernel(cs, 2, 0.5, 1.0, 12.0);
    CHECK(std::abs(at12.total - at6.total) < at6.tail_bound);
    CHECK(at12.tail_bound < at6.tail_bound);
    // a tiny tolerance triggers the truncation error
    CHECK_THROWS_AS(model_kernel(cs, 2, 0.9, 1.0, 6.0, 1e-30), InsufficientTruncation);
}

TEST_CASE("model kernel rejects the diagonal and bad arguments") {
    CrossSection cs = sphere_preset(4, 20);
    CHECK_THROWS_AS(model_kernel(cs, 2, 1.0, 1.0, 5.0), InvalidInput);
    CHECK_THROWS_AS(model_kernel(cs, 2, -1.0, 1.0, 5.0), InvalidInput);
}

TEST_CASE("ODE residual: second-order convergence and magnitude") {
    // magnitude at the spec'd step
    OdeResidualReport fine = verify_mode_ode(1.0, 2.0, 1e-3, 0.1, 1.8);
    CHECK(fine.residual_h <= 1e-4);
    // order certification from a step where truncation dominates roundoff
    OdeResidualReport rep = verify_mode_ode(1.0, 2.0, 4e-3, 0.1, 1.8);
    CHECK(rep.order > 1.9);
    CHECK(rep.order < 2.1);

    // halving from a step in the clean truncation regime (the finest step
    // h/4 must stay above the second-difference roundoff floor)
    OdeResidualReport rep25 = verify_mode_ode(2.5, 2.0, 4e-3, 0.1, 1.8);
    CHECK(rep25.order > 1.9);
    CHECK(rep25.order < 2.1);

    // both branches of the kernel solve the same ODE
    OdeResidualReport right = verify_mode_ode(1.7, 0.5, 4e-3, 0.7, 2.5);
    CHECK(right.order > 1.9);
    CHECK(right.order < 2.1);

    CHECK_THROWS_AS(verify_mode_ode(1.0, 1.0, 1e-3, 0.5, 1.5), InvalidInput);
}

TEST_CASE("wronskian jump equals -1/kappa0") {
    CHECK(wronskian_jump(1.5, 2.0) == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(wronskian_jump(0.3, 0.7) == doctest::Approx(-1.0 / 0.7).epsilon(1e-9));
    // jump is nu-independent at fixed kappa0
    double j1 = wronskian_jump(0.5, 1.3);
    double j2 = wronskian_jump(1.0, 1.3);
    double j3 = wronskian_jump(3.0, 1.3);
    CHECK(j1 == doctest::Approx(j2).epsilon(1e-8));
    CHECK(j2 == doctest::Approx(j3).epsilon(1e-8));
}

TEST_CASE("zf corner limit") {
    ZfLimitReport rep = zf_limit_check(1.0, 2.0, {0.3, 0.1, 0.03, 0.01, 0.003, 0.001});
    CHECK(rep.limit == doctest::Approx(0.25));
    CHECK(rep.deviations.back() < 1e-5);  // kappa = 1e-3
    CHECK(rep.monotone_below_0p1);

    // s = 1: limit is 1/(2 nu)
    ZfLimitReport unit = zf_limit_check(2.0, 1.0, {0.01});
    CHECK(unit.limit == doctest::Approx(0.25));
    // s <-> 1/s symmetry of the limit
    CHECK(zf_limit_check(1.3, 3.0, {0.01}).limit ==
          doctest::Approx(zf_limit_check(1.3, 1.0 / 3.0, {0.01}).limit).epsilon(1e-15));
}

TEST_CASE("Ktilde moment matches the closed form") {
    MomentResult m2 = ktilde_moment(2.0);
    CHECK(m2.closed_form == doctest::Approx(3.0 * M_PI / 4.0).epsilon(1e-14));
    CHECK(m2.rel_err < 1e-8);
    MomentResult mh = ktilde_moment(0.5);
    CHECK(mh.closed_form == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mh.rel_err < 1e-8);
    for (double nu : {1.0, 3.5, 6.0}) CHECK(ktilde_moment(nu).rel_err < 1e-8);
    // positivity across the range
    for (double nu = 0.25; nu < 10.0; nu += 0.75) CHECK(ktilde_moment(nu).quadrature > 0.0);
}
