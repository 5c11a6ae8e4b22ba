#include <cmath>
#include <random>

#include "conic/errors.hpp"
#include "conic/indicial.hpp"
#include "doctest.h"

using namespace conic;

namespace {

// Collect the distinct |values| of one family as doubles, ascending.
std::vector<double> family_values(const IndicialSet& set, Family f) {
    std::vector<double> out;
    for (const auto& m : set.roots) {
        if (!m.has_family(f)) continue;
        double v = m.value.value();
        if (v > 1e-12) out.push_back(v);
    }
    return out;
}

// A small custom cross-section: n = 5, b = (1,0,0,0,1),
// coexact(0) = {2}, coexact(1) = {3}, coexact(2) = {2}, exact = pairing.
CrossSection custom_n5() {
    CrossSection cs;
    cs.dim = 4;
    cs.betti = {1, 0, 0, 0, 1};
    auto ent = [](double v) { return SpectrumEntry{Scalar::inexact(v), 1}; };
    FormSpectrum d0, d1, d2, d3;
    d0.coexact = {ent(2.0)};
    d0.harmonic_dim = 1;
    d1.exact = {ent(2.0)};
    d1.coexact = {ent(3.0)};
    d2.exact = {ent(3.0)};
    d2.coexact = {ent(2.0)};
    d3.exact = {ent(2.0)};
    for (auto* f : {&d0, &d1, &d2, &d3}) f->truncation = 40.0;
    cs.spectra = {{0, d0}, {1, d1}, {2, d2}, {3, d3}};
    validate(cs);
    return cs;
}

}  // namespace

TEST_CASE("sphere n=4, q=2: family tables match the closed forms") {
    CrossSection cs = sphere_preset(4, 30);
    IndicialSet set = indicial_set(cs, 2, 5.0);

    CHECK(family_values(set, Family::I1) == std::vector<double>{2, 3, 4, 5});
    CHECK(family_values(set, Family::I2) == std::vector<double>{2, 3, 4, 5});
    CHECK(family_values(set, Family::I3) == std::vector<double>{1, 2, 3, 4, 5});
    CHECK(family_values(set, Family::I4) == std::vector<double>{3, 4, 5});

    // exact arithmetic: every root value is an integer here
    for (const auto& m : set.roots) CHECK(m.value.exact_rational().has_value());
}

TEST_CASE("sphere n=4, q=0: only I1 survives") {
    CrossSection cs = sphere_preset(4, 30);
    IndicialSet set = indicial_set(cs, 0, 6.0);
    CHECK(family_values(set, Family::I2).empty());
    CHECK(family_values(set, Family::I3).empty());
    CHECK(family_values(set, Family::I4).empty());
    CHECK(family_values(set, Family::I1) == std::vector<double>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("indicial set is symmetric under value -> -value") {
    CrossSection sphere = sphere_preset(5, 12);
    for (int q = 0; q <= 5; ++q) {
        IndicialSet set = indicial_set(sphere, q, 6.0);
        for (const auto& m : set.roots) {
            AlgValue neg = negated(m.value);
            bool found = false;
            for (const auto& other : set.roots)
                if (alg_equal(other.value, neg)) {
                    CHECK(other.multiplicity == m.multiplicity);
                    found = true;
                }
            CHECK(found);
        }
    }
}

TEST_CASE("merged eigenspace dimension: sphere n=4, q=1, value 2") {
    // dim E_2 = 6 (I1, coexact 1-forms) + 1 (I2, harmonic functions) + 9 (I3, alpha^2=8)
    CrossSection cs = sphere_preset(4, 30);
    IndicialSet set = indicial_set(cs, 1, 4.0);
    bool seen = false;
    for (const auto& m : set.roots) {
        if (std::abs(m.value.value() - 2.0) < 1e-12) {
            CHECK(m.multiplicity == 16);
            CHECK(m.parts.size() == 3);
            seen = true;
        }
    }
    CHECK(seen);
}

TEST_CASE("nu0 on spheres equals n/2 - 1 for every degree") {
    for (int n = 3; n <= 8; ++n) {
        CrossSection cs = sphere_preset(n, 10);
        for (int q = 0; q <= n; ++q) {
            AlgValue v = nu0(cs, q);
            CHECK(*v.exact_rational() == Rational(n - 2, 2));
        }
    }
}

TEST_CASE("nu0 on the custom n=5 cross-section (enumeration oracle)") {
    CrossSection cs = custom_n5();
    // Oracle: brute-force minimum over all four families from the same data.
    // I3 wins: sqrt((1/2)^2 + 3) - 1 = sqrt(3.25) - 1.
    AlgValue v = nu0(cs, 2);
    CHECK(v.value() == doctest::Approx(std::sqrt(3.25) - 1.0).epsilon(1e-14));
    CHECK(nu0_min_formula(cs, 2) == doctest::Approx(std::sqrt(3.25) - 1.0).epsilon(1e-14));
}

TEST_CASE("nu0 detects a root at zero") {
    // alpha^2 = 1 - (n/2-q)^2 in S^q_{d_N} with |q-n/2| <= 1/2 puts 0 in I3.
    // n = 4, q = 2: alpha^2 = 1.
    CrossSection cs;
    cs.dim = 3;
    cs.betti = {1, 0, 0, 1};
    auto ent = [](double v) { return SpectrumEntry{Scalar::inexact(v), 1}; };
    FormSpectrum d1, d2;
    d1.coexact = {ent(1.0)};
    d2.exact = {ent(1.0)};
    d1.truncation = d2.truncation = 30.0;
    FormSpectrum d0, d3;
    d0.coexact = {ent(5.0)};
    d0.harmonic_dim = 1;
    d1.exact = {ent(5.0)};
    // rebuild consistently: exact(1) = coexact(0)
    d0.truncation = 30.0;
    d3.exact = {ent(1.0)};  // = coexact(2)
    d2.coexact = {ent(1.0)};
    d3.harmonic_dim = 1;
    d3.truncation = 30.0;
    cs.spectra = {{0, d0}, {1, d1}, {2, d2}, {3, d3}};
    validate(cs);

    CHECK(nu0(cs, 2).value() == doctest::Approx(0.0));
    CHECK_FALSE(check_hypothesis_0notindroot(cs, 2).pass);
    CHECK(check_hypothesis_0notindroot(cs, 2).failing.find("bullet 1") != std::string::npos);
}

TEST_CASE("nu0_min_formula guard violation") {
    // q = n/2, lambda_q = 0.5 <= 1 - 0 = 1
    CrossSection cs;
    cs.dim = 3;
    cs.betti = {1, 0, 0, 1};
    auto ent = [](double v) { return SpectrumEntry{Scalar::inexact(v), 1}; };
    FormSpectrum d0, d1, d2, d3;
    d0.coexact = {ent(0.5)};
    d0.harmonic_dim = 1;
    d1.exact = {ent(0.5)};
    d1.coexact = {ent(0.5)};
    d2.exact = {ent(0.5)};
    d2.coexact = {ent(0.5)};
    d3.exact = {ent(0.5)};
    d3.harmonic_dim = 1;
    for (auto* f : {&d0, &d1, &d2, &d3}) f->truncation = 30.0;
    cs.spectra = {{0, d0}, {1, d1}, {2, d2}, {3, d3}};
    CHECK_THROWS_AS(nu0_min_formula(cs, 2), GuardViolation);
    CHECK_NOTHROW(nu0(cs, 2));  // set-theoretic route still works
}

TEST_CASE("insufficient truncation is reported") {
    CrossSection cs = sphere_preset(4, 3);  // spectra complete only to ~20
    CHECK_THROWS_AS(indicial_set(cs, 2, 50.0), InsufficientTruncation);
    CHECK_THROWS_AS(indicial_set(cs, 2, 4.0), InsufficientTruncation);  // I3 certifies to sqrt(20)-1
    CHECK_NOTHROW(indicial_set(cs, 2, 3.0));
}

TEST_CASE("hypothesis check on spheres passes everywhere") {
    for (int n : {3, 4, 6}) {
        CrossSection cs = sphere_preset(n, 8);
        for (int q = 0; q <= n; ++q) {
            HypothesisReport rep = check_hypothesis_0notindroot(cs, q);
            CHECK(rep.pass);
            CHECK(rep.nu0_value > 0);
        }
    }
}

TEST_CASE("hypothesis bullet 2: middle-degree cohomology") {
    // n = 4, q = n/2-1 = 1 with b_1(N) != 0 must fail bullet 2.
    CrossSection cs;
    cs.dim = 3;
    cs.betti = {1, 1, 1, 1};
    auto ent = [](double v) { return SpectrumEntry{Scalar::inexact(v), 1}; };
    FormSpectrum d0, d1, d2, d3;
    d0.coexact = {ent(6.0)};
    d0.harmonic_dim = 1;
    d1.exact = {ent(6.0)};
    d1.coexact = {ent(7.0)};
    d1.harmonic_dim = 1;
    d2.exact = {ent(7.0)};
    d2.coexact = {ent(6.0)};
    d2.harmonic_dim = 1;
    d3.exact = {ent(6.0)};
    d3.harmonic_dim = 1;
    for (auto* f : {&d0, &d1, &d2, &d3}) f->truncation = 30.0;
    cs.spectra = {{0, d0}, {1, d1}, {2, d2}, {3, d3}};
    validate(cs);

    HypothesisReport rep = check_hypothesis_0notindroot(cs, 1);
    CHECK_FALSE(rep.pass);
    CHECK(rep.failing.find("bullet 2") != std::string::npos);
    CHECK(rep.nu0_value == doctest::Approx(0.0));  // verdicts agree
}

namespace {

// Random cross-section with pairing built in; eigenvalues >= lo.
CrossSection random_cs(std::mt19937& rng, int n, double lo) {
    int m = n - 1;
    CrossSection cs;
    cs.dim = m;
    cs.betti.assign(m + 1, 0);
    std::uniform_int_distribution<int> bd(0, 2);
    for (int p = 0; p <= m / 2; ++p) {
        int b = (p == 0) ? 1 : bd(rng) == 0 ? 1 : 0;
        cs.betti[p] = b;
        cs.betti[m - p] = b;
    }
    std::uniform_real_distribution<double> ev(lo, 25.0);
    std::uniform_int_distribution<int> cnt(1, 4), mult(1, 3);
    std::vector<std::vector<SpectrumEntry>> coex(m + 1);
    for (int p = 0; p < m; ++p) {
        int k = cnt(rng);
        std::vector<double> vals;
        for (int i = 0; i < k; ++i) vals.push_back(ev(rng));
        std::sort(vals.begin(), vals.end());
        for (double v : vals) coex[p].push_back({Scalar::inexact(v), mult(rng)});
    }
    for (int p = 0; p <= m; ++p) {
        FormSpectrum fs;
        if (p < m) fs.coexact = coex[p];
        if (p > 0) fs.exact = coex[p - 1];
        fs.harmonic_dim = cs.betti[p];
        fs.truncation = 40.0;
        cs.spectra[p] = std::move(fs);
    }
    validate(cs);
    return cs;
}

}  // namespace

TEST_CASE("randomized: nu0 agrees with the closed form under the guard") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> nd(3, 8);
    int tested = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int n = nd(rng);
        CrossSection cs = random_cs(rng, n, 0.3);
        for (int q = 0; q <= n; ++q) {
            MinEigs me = min_eigenvalues(cs, q);
            double c = n / 2.0 - q;
            if (!(me.lambda_p > 1.0 - c * c)) continue;  // guard fails; formula not applicable
            double a = nu0(cs, q).value();
            double b = nu0_min_formula(cs, q);
            CHECK(a == doctest::Approx(b).epsilon(1e-9));
            ++tested;
        }
    }
    CHECK(tested > 100);
}

TEST_CASE("randomized: hypothesis verdict equals nu0 > 0") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> nd(3, 8);
    for (int trial = 0; trial < 100; ++trial) {
        int n = nd(rng);
        CrossSection cs = random_cs(rng, n, 0.3);
        for (int q = 0; q <= n; ++q) {
            HypothesisReport rep = check_hypothesis_0notindroot(cs, q);
            CHECK(rep.pass == (rep.nu0_value > 1e-12));
        }
    }
}
