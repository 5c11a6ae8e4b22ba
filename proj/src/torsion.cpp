#include "conic/torsion.hpp"

#include <algorithm>
#include <cmath>

#include "conic/errors.hpp"
#include "conic/quadrature.hpp"
#include "json.hpp"

namespace conic {

namespace {

// bottom of the full spectrum of Delta_N on p-forms (harmonic counts as 0)
double spectrum_bottom(const CrossSection& cs, int p) {
    const FormSpectrum& fs = cs.spectrum(p);
    if (fs.harmonic_dim > 0) return 0.0;
    double m = kInf;
    if (!fs.exact.empty()) m = std::min(m, fs.exact.front().eig.d);
    if (!fs.coexact.empty()) m = std::min(m, fs.coexact.front().eig.d);
    return m;
}

}  // namespace

WittReport check_modified_witt(const CrossSection& cs) {
    const int n = cs.n();
    if (n % 2 == 0) throw InvalidInput("torsion pipeline requires odd n");
    WittReport rep;
    rep.middle_degree = (n - 1) / 2;
    rep.harmonic_trivial = cs.betti_at(rep.middle_degree) == 0;
    rep.min_eigenvalue = spectrum_bottom(cs, rep.middle_degree);
    if (cs.truncation_at(rep.middle_degree) < 0.75)
        throw InsufficientTruncation("middle-degree spectrum not certified past 3/4");
    rep.pass = rep.harmonic_trivial && rep.min_eigenvalue > 0.75;
    rep.detail = rep.pass ? "Sp(Delta_N) on middle-degree forms avoids [0, 3/4]"
                          : (rep.harmonic_trivial
                                 ? "middle-degree eigenvalue " +
                                       std::to_string(rep.min_eigenvalue) + " lies in [0, 3/4]"
                                 : "harmonic middle-degree forms exist (0 in spectrum)");
    return rep;
}

NoResonanceReport check_no_resonance_sufficient(const CrossSection& cs, int q) {
    const int n = cs.n();
    if (n % 2 == 1) {
        if (q != (n - 1) / 2 && q != (n + 1) / 2)
            return {true, "q != (n +- 1)/2, no resonance possible"};
        WittReport w = check_modified_witt(cs);
        if (w.pass) return {true, "modified Witt condition holds"};
        return {false, "q = (n +- 1)/2 and the modified Witt condition fails"};
    }
    if (std::abs(q - n / 2.0) > 1.0) return {true, "|q - n/2| > 1, no resonance possible"};
    if (q == n / 2 - 1) {
        if (cs.betti_at(q) == 0) return {true, "H^{n/2-1}(N) = 0"};
        return {false, "H^{n/2-1}(N) != 0"};
    }
    if (q == n / 2 + 1) {
        if (cs.betti_at(q - 1) == 0) return {true, "H^{n/2}(N) = 0"};
        return {false, "H^{n/2}(N) != 0"};
    }
    // q = n/2
    if (cs.truncation_at(q) < 1.0)
        throw InsufficientTruncation("middle-degree spectrum not certified past 1");
    if (spectrum_bottom(cs, q) > 1.0 && cs.betti_at(q) == 0)
        return {true, "Sp_{Lambda^{n/2}}(Delta_N) avoids [0, 1]"};
    return {false, "Sp_{Lambda^{n/2}}(Delta_N) meets [0, 1]"};
}

int small_eig_count(int ker_cone, int ker_l2_m, int ker_eps0) {
    if (ker_cone < 0 || ker_l2_m < 0 || ker_eps0 < 0)
        throw InvalidInput("kernel dimensions must be nonnegative");
    int nq = ker_cone + ker_l2_m - ker_eps0;
    if (nq < 0) throw InvalidInput("inconsistent kernel dimensions: N_q < 0");
    return nq;
}

LemmaConditionsReport check_lemma_conditions(const CrossSection& cs) {
    const int n = cs.n();
    if (n % 2 == 0) throw InvalidInput("torsion pipeline requires odd n");
    LemmaConditionsReport rep;
    rep.cond_a = true;
    for (int q = 1; q <= n - 2; ++q)
        if (cs.betti_at(q) != 0) rep.cond_a = false;

    int mid = (n - 1) / 2;
    if (cs.truncation_at(mid) < 15.0 / 4.0)
        throw InsufficientTruncation("middle-degree spectrum not certified past 15/4");
    rep.cond_b1 = cs.betti_at(mid) == 0 && spectrum_bottom(cs, mid) >= 15.0 / 4.0;

    int low = (n - 3) / 2;
    double lam = kInf;
    if (low >= 1) {
        if (cs.truncation_at(low) < 7.0 / 4.0)
            throw InsufficientTruncation("degree (n-3)/2 spectrum not certified past 7/4");
        const auto& ex = cs.spectrum(low).exact;
        if (!ex.empty()) lam = ex.front().eig.d;
    } else {
        lam = kInf;  // no exact 0-forms
    }
    rep.cond_b2 = lam >= 7.0 / 4.0;

    rep.pass = rep.cond_a && rep.cond_b1 && rep.cond_b2;
    if (!rep.cond_a) rep.detail = "condition a fails: H^q(N) != 0 for some q in [1, n-2]";
    else if (!rep.cond_b1)
        rep.detail = "condition b fails: middle-degree spectrum meets [0, 15/4)";
    else if (!rep.cond_b2)
        rep.detail = "condition b fails: exact (n-3)/2-spectrum meets [0, 7/4)";
    else rep.detail = "all conditions hold; N_q = 0 for all q";
    return rep;
}

ExpansionResult assemble_log_det_expansion(const DegenerationLedger& ledger, double epsilon) {
    const int n = ledger.n;
    if (n % 2 == 0 || n < 1) throw InvalidInput("ledger dimension must be odd");
    if ((int)ledger.degrees.size() != n + 1)
        throw InvalidInput("incomplete ledger: need one entry per degree 0..n");
    if (!(epsilon > 0)) throw InvalidInput("epsilon must be positive");

    ExpansionResult out;
    out.epsilon = epsilon;
    out.eps_independent = true;
    const double log_eps = std::log(epsilon);

    for (int q = 0; q <= n; ++q) {
        const DegreeLedgerEntry& e = ledger.degrees[q];
        int nq = small_eig_count(e.ker_cone, e.ker_l2_m, e.ker_eps0);
        if (q == 0 && nq != 0)
            throw InvalidInput("inconsistent ledger: N_0 must be 0");
        if ((int)e.small_eigs.size() != nq)
            throw InvalidInput("degree " + std::to_string(q) + ": " +
                               std::to_string(e.small_eigs.size()) +
                               " small eigenvalues listed but N_q = " + std::to_string(nq));
        double small_sum = 0.0;
        for (double mu : e.small_eigs) {
            if (!(mu > 0)) throw InvalidInput("small eigenvalues must be positive");
            small_sum += std::log(mu);
        }
        if (e.zeta_M_at_0 != 0.0 || nq != 0) out.eps_independent = false;

        DegreeExpansion d;
        d.q = q;
        d.n_q = nq;
        d.log_det = -2.0 * log_eps * e.zeta_M_at_0 + small_sum + e.log_det_cone + e.log_det_m;
        out.per_degree.push_back(d);

        const double sgn = (q % 2 == 0) ? 1.0 : -1.0;
        out.log_eps_coefficient += sgn * q * e.zeta_M_at_0;
        out.small_eig_term += 0.5 * (-sgn) * q * small_sum;
        out.log_torsion_cone += 0.5 * (-sgn) * q * e.log_det_cone;
        out.log_torsion_m += 0.5 * (-sgn) * q * e.log_det_m;
    }
    out.log_torsion = out.log_eps_coefficient * log_eps + out.small_eig_term +
                      out.log_torsion_cone + out.log_torsion_m;
    return out;
}

ZetaResult zeta_from_eigenvalues(const std::vector<std::pair<double, int>>& eigs,
                                 double lambda_complete, const std::vector<double>& heat_coeffs,
                                 int kernel_dim) {
    if (heat_coeffs.empty()) throw InvalidInput("heat coefficient list a_0..a_n required");
    const int n = (int)heat_coeffs.size() - 1;
    if (kernel_dim < 0) throw InvalidInput("kernel dimension must be nonnegative");
    for (size_t i = 0; i < eigs.size(); ++i) {
        if (!(eigs[i].first > 0) || eigs[i].second < 1)
            throw InvalidInput("eigenvalues must be positive with multiplicities >= 1");
        if (i && eigs[i].first < eigs[i - 1].first)
            throw InvalidInput("eigenvalue list must be sorted");
        if (eigs[i].first > lambda_complete)
            throw InvalidInput("eigenvalue above the declared completeness cutoff");
    }

    ZetaResult out;
    const double gamma_e = 0.57721566490153286;
    const double a_n = heat_coeffs[n];
    out.zeta0 = a_n - kernel_dim;

    // t > 1: termwise Mellin of the eigenvalue sum gives sum mult * E1(lambda).
    double upper = 0.0;
    for (const auto& [lam, mult] : eigs) upper += mult * (-std::expint(-lam));

    // t < 1: subtract the heat expansion termwise, integrate what remains.
    const double t_min = std::min(0.5, 35.0 / lambda_complete);
    if (!(t_min < 0.5) && lambda_complete < 70.0)
        throw InvalidInput("eigenvalue list too short for the requested accuracy");
    auto remainder = [&](double t) {
        double theta = kernel_dim;
        for (const auto& [lam, mult] : eigs) theta += mult * std::exp(-lam * t);
        for (int k = 0; k <= n; ++k) theta -= heat_coeffs[k] * std::pow(t, (k - n) / 2.0);
        return theta / t;
    };
    const double quad_tol = 1e-11;
    double mid = adaptive_simpson<double>(remainder, t_min, 1.0, quad_tol);

    double series = 0.0;
    for (int k = 0; k < n; ++k) series += 2.0 * heat_coeffs[k] / (k - n);

    out.zeta_prime0 = gamma_e * out.zeta0 + series + mid + upper;

    // error estimates: missing heat-trace tail above lambda_complete
    // (Weyl-type density from a_0 with a factor-2 margin), the skipped
    // [0, t_min] remainder (first missing half power), and quadrature.
    double weyl = 2.0 * std::abs(heat_coeffs[0]) / std::tgamma(n / 2.0 + 1.0);
    auto tail_at = [&](double t) {
        // int_L^inf e^{-lt} d(l^{n/2}) <= (n/2) L^{n/2-1} e^{-Lt} / t-ish bound
        return weyl * std::pow(lambda_complete, n / 2.0) * std::exp(-lambda_complete * t);
    };
    double err_tail = adaptive_simpson<double>([&](double t) { return tail_at(t) / t; }, t_min,
                                               1.0, 1e-13);
    double err_small = 4.0 * std::abs(remainder(t_min)) * t_min;
    double err_e1 = weyl * std::pow(lambda_complete, n / 2.0) * std::exp(-lambda_complete);
    out.zeta_prime0_err = err_tail + err_small + 10 * quad_tol + err_e1;
    out.zeta0_err = 0.0;  // exact in the trusted inputs
    return out;
}

using nlohmann::json;

DegenerationLedger ledger_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("bad ledger JSON: ") + e.what());
    }
    DegenerationLedger ledger;
    try {
        ledger.n = j.at("n").get<int>();
        for (const auto& d : j.at("degrees")) {
            DegreeLedgerEntry e;
            e.zeta_M_at_0 = d.at("zeta_M_at_0").get<double>();
            e.small_eigs = d.value("small_eigs", std::vector<double>{});
            e.log_det_cone = d.at("log_det_cone").get<double>();
            e.log_det_m = d.at("log_det_M").get<double>();
            auto k = d.at("kernel_dims");
            e.ker_cone = k.at(0).get<int>();
            e.ker_l2_m = k.at(1).get<int>();
            e.ker_eps0 = k.at(2).get<int>();
            ledger.degrees.push_back(std::move(e));
        }
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("ledger schema violation: ") + e.what());
    }
    return ledger;
}

std::string to_json(const DegenerationLedger& ledger, int indent) {
    json degrees = json::array();
    for (const auto& e : ledger.degrees) {
        degrees.push_back({{"zeta_M_at_0", e.zeta_M_at_0},
                           {"small_eigs", e.small_eigs},
                           {"log_det_cone", e.log_det_cone},
                           {"log_det_M", e.log_det_m},
                           {"kernel_dims", {e.ker_cone, e.ker_l2_m, e.ker_eps0}}});
    }
    return json{{"n", ledger.n}, {"degrees", degrees}}.dump(indent);
}

}  // namespace conic
