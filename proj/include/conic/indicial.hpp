#pragma once

#include <string>
#include <vector>

#include "conic/alg_value.hpp"
#include "conic/cross_section.hpp"

namespace conic {

enum class Family { I1, I2, I3, I4 };

const char* family_name(Family f);

// One signed root of one family:  value = sign * (sqrt((n/2-q+sigma)^2 + alpha^2) + delta).
// sigma = -1 (I1), +1 (I2), 0 (I3/I4); delta = -1 (I3), +1 (I4), 0 otherwise.
struct IndicialRoot {
    Family family;
    int sign;           // +-1
    int inner_offset;   // sigma
    int outer_shift;    // delta
    Scalar alpha2;      // eigenvalue of Delta_N feeding this root (0 = harmonic branch)
    int multiplicity;   // dim of the E_nu^j contribution
    Rational offset;    // n/2 - q + sigma, exact

    Scalar radicand() const;
    AlgValue value() const;
};

// All roots sharing one value, with the per-family breakdown.
struct MergedRoot {
    AlgValue value;
    int multiplicity = 0;  // dim E_nu
    std::vector<IndicialRoot> parts;

    bool has_family(Family f) const;
};

struct IndicialSet {
    int n = 0, q = 0;
    double radius = 0.0;
    std::vector<MergedRoot> roots;  // sorted ascending by value; symmetric under v -> -v
};

// Per-family enumeration of signed roots with |value| <= R (unmerged).
std::vector<IndicialRoot> enumerate_family(const CrossSection& cs, int q, Family f, double R);

// Completeness cutoff of the alpha^2 source feeding family f
// (+inf when the source is structurally empty, hence complete).
double family_source_cutoff(const CrossSection& cs, int q, Family f);

// Largest R for which the supplied spectra certify completeness of I(P_b)
// within |value| <= R.
double certified_radius(const CrossSection& cs, int q);

// The indicial set I(P_b) = I1 u I2 u I3 u I4 with eigenspace dimensions.
// Throws InsufficientTruncation when R exceeds the certified radius.
IndicialSet indicial_set(const CrossSection& cs, int q, double R);

// nu_0 = min(I(P_b) n [0, inf)). 0 is a legal output.
AlgValue nu0(const CrossSection& cs, int q);

// Closed form min(sqrt((n/2-q)^2+lambda_q)-1, sqrt((n/2-q-1)^2+gamma_q),
// sqrt((n/2-q+1)^2+mu_{q-1})), valid under the guard lambda_q > 1-|n/2-q|^2.
// Throws GuardViolation otherwise (use nu0 instead).
double nu0_min_formula(const CrossSection& cs, int q);

struct HypothesisReport {
    bool applicable_bullet1 = false;  // |q-n/2| <= 1/2
    bool bullet1 = true;              // 1-(n/2-q)^2 not in S^q_{d_N}
    bool applicable_bullet2 = false;  // q = n/2-1
    bool bullet2 = true;              // H^q(N) = 0
    bool applicable_bullet3 = false;  // q = n/2+1
    bool bullet3 = true;              // H^{q-1}(N) = 0
    bool pass = true;                 // all applicable bullets hold
    double nu0_value = 0.0;           // cross-check: pass <=> nu0 > 0
    std::string failing;              // name of first failing bullet, if any
};

HypothesisReport check_hypothesis_0notindroot(const CrossSection& cs, int q);

std::string to_json(const IndicialSet& set, int indent = -1);

}  // namespace conic
