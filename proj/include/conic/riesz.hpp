#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conic/indicial.hpp"

namespace conic {

enum class Ternary { Yes, No, Unknown };

const char* ternary_name(Ternary t);

// Topological and kernel data the toolkit cannot compute from (N, h0).
struct TopologyInput {
    // injectivity of H^{q+1}(Mbar, dMbar) -> H^{q+1}(Mbar)
    Ternary e_injective_low = Ternary::Unknown;
    // injectivity of H^{n-q+1}(Mbar, dMbar) -> H^{n-q+1}(Mbar)
    Ternary e_injective_high = Ternary::Unknown;
    int kernel_dim = 0;                      // dim ker_{L^2}(Delta_q)
    std::optional<double> kernel_decay;      // nu-tilde; required when kernel_dim > 0
    double n0 = 3.0;                         // order of asymptotic conicity
};

// A decay index that may be a value, a certified lower bound ">= bound",
// or absent (the defining set is structurally empty).
struct NuBound {
    enum class Kind { Value, AtLeast, Absent } kind = Kind::Absent;
    Scalar value;   // set for Kind::Value
    double bound = 0.0;  // set for Kind::AtLeast

    static NuBound of(const Scalar& v) { return {Kind::Value, v, 0.0}; }
    static NuBound at_least(double b) { return {Kind::AtLeast, Scalar(b), b}; }
    static NuBound absent() { return {}; }
};

struct NuIndices {
    NuBound nu_d, nu_delta, nu_D;
};

// One endpoint of an L^p interval: exact rational when derivable, +inf allowed.
struct Endpoint {
    double value = 0.0;
    std::optional<Rational> exact;
    bool infinite = false;

    std::string str() const;
};

struct Interval {
    Endpoint lo, hi;
    bool contains(double p) const;
    std::string str() const;
};

struct AuditEntry {
    std::string hypothesis;
    enum class Status { Pass, Fail, Unknown, Assumed } status;
    std::string detail;
};

struct RieszReport {
    int n = 0, q = 0;
    bool hypothesis_ok = false;   // 0 not in I(P_b)
    std::string failing_hypothesis;
    Scalar nu0, nu_ker;
    NuBound nu_d, nu_delta, nu_D;
    int case_id = 0;              // 1 or 2; 0 when undetermined or failed
    Interval sufficient;
    std::optional<Interval> sharp;                       // certified sharp interval
    std::string sharp_status;                            // "certified" / "not certified: ..."
    std::vector<std::pair<std::string, Interval>> sharp_candidates;  // for unknown topology
    std::vector<AuditEntry> audit;
};

// Indicial sets of d and delta (family-filtered subsets of I(P_b)), as the
// signed per-mode root lists of Eq-level granularity.
std::pair<std::vector<IndicialRoot>, std::vector<IndicialRoot>> indicial_sets_d_delta(
    const CrossSection& cs, int q, double R);

// nu_d = -max(R^- n I(P_b) \ I(d)), nu_delta analogous, nu_D = min.
NuIndices nu_indices(const CrossSection& cs, int q);

// Closed-form nu_D cross-check (valid under the lambda_q guard).
// The paper's printed branch condition for mu'_q is inconsistent; the corrected
// variant is derived from the set-theoretic definition.
enum class MuPrimeConvention { Corrected, PaperLiteral };
double nu_D_closed_form(const CrossSection& cs, int q,
                        MuPrimeConvention conv = MuPrimeConvention::Corrected);

// nu_ker per Eq. defofmth: nu0+2 when the kernel vanishes, otherwise
// min(nu0+2, kernel_decay snapped down to the indicial lattice).
Scalar nu_ker(const CrossSection& cs, int q, const TopologyInput& topo);

RieszReport riesz_interval(const CrossSection& cs, int q, const TopologyInput& topo);

// Degree-only interval of the introduction corollary; requires |q - n/2| > 1.
Interval generic_degree_interval(int n, int q, bool kernel_present);

struct SobolevReport {
    Rational p, p_conjugate;  // 2n/(n+2), 2n/(n-2)
    std::vector<AuditEntry> audit;
};

// Sobolev exponents of the mapping theorem, with optional hypothesis audit
// against a cross-section and topology data.
SobolevReport sobolev_exponents(int n);
SobolevReport sobolev_exponents(int n, const CrossSection& cs, int q, const TopologyInput& topo);

std::string to_json(const RieszReport& rep, int indent = -1);

}  // namespace conic
