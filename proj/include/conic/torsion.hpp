#pragma once

#include <string>
#include <utility>
#include <vector>

#include "conic/cross_section.hpp"

namespace conic {

struct WittReport {
    bool pass = false;
    int middle_degree = 0;        // (n-1)/2
    bool harmonic_trivial = false;  // b_{(n-1)/2}(N) = 0
    double min_eigenvalue = kInf;   // bottom of Sp_{Lambda^{(n-1)/2}}(Delta_N)
    std::string detail;
};

// Modified Witt condition: Sp_{Lambda^{(n-1)/2}}(Delta_N) n [0, 3/4] empty.
// Requires n odd.
WittReport check_modified_witt(const CrossSection& cs);

struct NoResonanceReport {
    bool guaranteed = false;
    std::string reason;
};

// Sufficient conditions under which Delta_q^M has no zero-resonance and
// 0 is not an indicial root: degree gaps, or the modified Witt condition
// (n odd); the four spectral/cohomological bullets (n even).
NoResonanceReport check_no_resonance_sufficient(const CrossSection& cs, int q);

// N_q = dim ker(Delta_q^{Omega_0}) + dim ker_{L^2}(Delta_q^M)
//       - dim ker(Delta_q^{Omega_eps0}); throws on a negative result.
int small_eig_count(int ker_cone, int ker_l2_m, int ker_eps0);

struct LemmaConditionsReport {
    bool cond_a = false;   // H^q(N) = 0 for q in [1, n-2]
    bool cond_b1 = false;  // Sp_{Lambda^{(n-1)/2}} n [0, 15/4) empty
    bool cond_b2 = false;  // Sp_{Lambda^{(n-3)/2}}|Im d_N n [0, 7/4) empty
    bool pass = false;
    std::string detail;
};

// Conditions forcing N_q = 0 for every q.
LemmaConditionsReport check_lemma_conditions(const CrossSection& cs);

struct DegreeLedgerEntry {
    double zeta_M_at_0 = 0.0;              // zeta_q^M(0)
    std::vector<double> small_eigs;        // mu_i^q(eps), i = 1..N_q
    double log_det_cone = 0.0;             // log det Delta_q^{Omega_0}
    double log_det_m = 0.0;                // log det Delta_q^M (renormalized)
    int ker_cone = 0, ker_l2_m = 0, ker_eps0 = 0;
};

struct DegenerationLedger {
    int n = 0;                              // odd
    std::vector<DegreeLedgerEntry> degrees;  // size n+1
};

DegenerationLedger ledger_from_json(const std::string& text);
std::string to_json(const DegenerationLedger& ledger, int indent = -1);

struct DegreeExpansion {
    int q = 0;
    int n_q = 0;          // number of small eigenvalues
    double log_det = 0.0; // -2 log(eps) zeta_q^M(0) + sum log mu_i + cone + M terms
};

struct ExpansionResult {
    double epsilon = 0.0;
    std::vector<DegreeExpansion> per_degree;
    double log_eps_coefficient = 0.0;  // sum_q (-1)^q q zeta_q^M(0)
    double small_eig_term = 0.0;       // (1/2) sum_q (-1)^{q+1} q sum_i log mu_i^q
    double log_torsion_cone = 0.0;     // log T(Omega_0)
    double log_torsion_m = 0.0;        // log T(M)
    double log_torsion = 0.0;          // assembled log T(Omega_eps), o(1) dropped
    bool eps_independent = false;      // all zeta terms and N_q vanish
};

// Per-degree log-determinant expansions and the assembled torsion
// log T = (1/2) sum (-1)^{q+1} q log det Delta_q.
ExpansionResult assemble_log_det_expansion(const DegenerationLedger& ledger, double epsilon);

struct ZetaResult {
    double zeta0 = 0.0;
    double zeta_prime0 = 0.0;
    double zeta0_err = 0.0;
    double zeta_prime0_err = 0.0;  // truncation + quadrature estimate
};

// Zeta function of a positive spectrum at s = 0 from an eigenvalue list
// complete below lambda_complete and the short-time heat coefficients
// a_0..a_n of sum_k a_k t^{(k-n)/2}. The Mellin integral is split at t = 1:
// eigenvalue sum above, termwise continuation plus a quadrature remainder
// below. kernel_dim enters only the t > 1 subtraction.
ZetaResult zeta_from_eigenvalues(const std::vector<std::pair<double, int>>& eigs,
                                 double lambda_complete, const std::vector<double>& heat_coeffs,
                                 int kernel_dim);

}  // namespace conic
