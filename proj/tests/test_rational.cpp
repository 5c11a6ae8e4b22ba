#include <random>

#include "conic/alg_value.hpp"
#include "conic/rational.hpp"
#include "doctest.h"

using namespace conic;

TEST_CASE("rational arithmetic and normalization") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK((Rational(7, 2) * Rational(2, 7)) == Rational(1));
    CHECK(Rational(5, 2) > Rational(12, 5));
    CHECK(Rational(-3).str() == "-3");
    CHECK(Rational(4, 3).str() == "4/3");
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("exact square roots") {
    CHECK(*Rational(9, 4).sqrt_exact() == Rational(3, 2));
    CHECK(*Rational(0).sqrt_exact() == Rational(0));
    CHECK(!Rational(2).sqrt_exact());
    CHECK(!Rational(-4).sqrt_exact());
}

namespace {
AlgValue make(int sign, long long num, long long den, int shift) {
    return AlgValue{sign, Scalar(Rational(num, den)), shift};
}
}  // namespace

TEST_CASE("algebraic values: constructed coincidences are detected exactly") {
    // 3 = sqrt(9) = sqrt(4)+1 = sqrt(16)-1
    AlgValue a = make(+1, 9, 1, 0);
    AlgValue b = make(+1, 4, 1, +1);
    AlgValue c = make(+1, 16, 1, -1);
    CHECK(alg_equal(a, b));
    CHECK(alg_equal(b, c));
    CHECK(compare(a, make(+1, 10, 1, 0)) < 0);
    CHECK(compare(make(-1, 9, 1, 0), a) < 0);
    // sqrt(2)+1 != sqrt(3)+... near-misses stay distinct
    CHECK(!alg_equal(make(+1, 2, 1, +1), make(+1, 3, 1, +1)));
    CHECK(!alg_equal(make(+1, 2, 1, 0), make(+1, 2, 1, +1)));
    // negative branch of I3 with rho < 1: -(sqrt(1/4)-1) = +1/2 = sqrt(1/4)
    CHECK(alg_equal(make(-1, 1, 4, -1), make(+1, 1, 4, 0)));
}

TEST_CASE("algebraic comparison agrees with doubles on random values") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<long long> num(0, 400);
    std::uniform_int_distribution<int> den(1, 4), sgn(0, 1), sh(-1, 1);
    for (int i = 0; i < 2000; ++i) {
        AlgValue a{sgn(rng) ? 1 : -1, Scalar(Rational(num(rng), den(rng))), sh(rng)};
        AlgValue b{sgn(rng) ? 1 : -1, Scalar(Rational(num(rng), den(rng))), sh(rng)};
        int cmp = compare(a, b);
        double va = a.value(), vb = b.value();
        if (std::abs(va - vb) > 1e-7) {
            CHECK(cmp == (va < vb ? -1 : 1));
        } else if (cmp == 0) {
            CHECK(va == doctest::Approx(vb).epsilon(1e-12));
        }
    }
}

TEST_CASE("exact rational extraction from algebraic values") {
    CHECK(*make(+1, 9, 4, -1).exact_rational() == Rational(1, 2));
    CHECK(!make(+1, 2, 1, 0).exact_rational());
    CHECK(*make(-1, 25, 1, +1).exact_rational() == Rational(-6));
}
