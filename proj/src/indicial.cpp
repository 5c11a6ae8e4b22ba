#include "conic/indicial.hpp"

#include <algorithm>
#include <cmath>

#include "conic/errors.hpp"
#include "json.hpp"

namespace conic {

const char* family_name(Family f) {
    switch (f) {
        case Family::I1: return "I1";
        case Family::I2: return "I2";
        case Family::I3: return "I3";
        default: return "I4";
    }
}

Scalar IndicialRoot::radicand() const { return Scalar(offset * offset) + alpha2; }

AlgValue IndicialRoot::value() const { return AlgValue{sign, radicand(), outer_shift}; }

bool MergedRoot::has_family(Family f) const {
    for (const auto& p : parts)
        if (p.family == f) return true;
    return false;
}

namespace {

constexpr double kEps = 1e-12;

bool exact_struct_empty(const CrossSection& cs, int p) { return p <= 0 || p > cs.dim; }
bool coexact_struct_empty(const CrossSection& cs, int p) { return p < 0 || p >= cs.dim; }

struct Source {
    // (alpha^2, mult) pairs feeding a family, plus completeness cutoff.
    std::vector<SpectrumEntry> entries;
    double cutoff = kInf;  // entries complete for alpha^2 <= cutoff
};

// I1: alpha^2 in S^q_0 u S^q_{delta_N};  I2: S^{q-1}_0 u S^{q-1}_{d_N};
// I3, I4: S^q_{d_N}.
Source family_source(const CrossSection& cs, int q, Family f) {
    Source src;
    auto add_harmonic = [&](int p) {
        int b = cs.betti_at(p);
        if (b > 0) src.entries.push_back({Scalar(Rational(0)), b});
    };
    auto add_list = [&](int p, bool exact_list) {
        bool sempty = exact_list ? exact_struct_empty(cs, p) : coexact_struct_empty(cs, p);
        if (sempty) return;
        const FormSpectrum& fs = cs.spectrum(p);
        const auto& list = exact_list ? fs.exact : fs.coexact;
        src.entries.insert(src.entries.end(), list.begin(), list.end());
        src.cutoff = std::min(src.cutoff, fs.truncation);
    };
    switch (f) {
        case Family::I1:
            if (cs.degree_in_range(q)) add_harmonic(q);
            add_list(q, /*exact_list=*/false);
            break;
        case Family::I2:
            if (cs.degree_in_range(q - 1)) add_harmonic(q - 1);
            add_list(q - 1, /*exact_list=*/true);
            break;
        default:
            add_list(q, /*exact_list=*/true);
            break;
    }
    return src;
}

Rational family_offset(int n, int q, Family f) {
    int sigma = (f == Family::I1) ? -1 : (f == Family::I2 ? +1 : 0);
    return Rational(n - 2 * q + 2 * sigma, 2);
}

int family_shift(Family f) {
    return f == Family::I3 ? -1 : (f == Family::I4 ? +1 : 0);
}

// Smallest possible |value| of a root this family could hide beyond its
// spectral cutoff; +inf when the source is complete.
double family_tail_bound(const CrossSection& cs, int q, Family f) {
    Source src = family_source(cs, q, f);
    if (src.cutoff == kInf) return kInf;
    double c = family_offset(cs.n(), q, f).to_double();
    double rho = std::sqrt(c * c + src.cutoff);
    switch (family_shift(f)) {
        case 0: return rho;
        case +1: return rho + 1.0;
        default: return rho >= 1.0 ? rho - 1.0 : 0.0;  // missing rho could sit near 1
    }
}

}  // namespace

std::vector<IndicialRoot> enumerate_family(const CrossSection& cs, int q, Family f, double R) {
    const int n = cs.n();
    Source src = family_source(cs, q, f);
    Rational c = family_offset(n, q, f);
    int sigma = (f == Family::I1) ? -1 : (f == Family::I2 ? +1 : 0);
    int delta = family_shift(f);

    std::vector<IndicialRoot> out;
    for (const auto& e : src.entries) {
        for (int sign : {+1, -1}) {
            IndicialRoot r{f, sign, sigma, delta, e.eig, e.mult, c};
            if (std::abs(r.value().value()) <= R + kEps) out.push_back(r);
        }
    }
    return out;
}

double family_source_cutoff(const CrossSection& cs, int q, Family f) {
    return family_source(cs, q, f).cutoff;
}

double certified_radius(const CrossSection& cs, int q) {
    double r = kInf;
    for (Family f : {Family::I1, Family::I2, Family::I3, Family::I4})
        r = std::min(r, family_tail_bound(cs, q, f));
    return r;
}

IndicialSet indicial_set(const CrossSection& cs, int q, double R) {
    const int n = cs.n();
    if (q < 0 || q > n) throw InvalidInput("degree q must lie in [0, n]");
    double cert = certified_radius(cs, q);
    if (R > cert + kEps)
        throw InsufficientTruncation(
            "insufficient truncation: indicial set certified only to radius " +
            std::to_string(cert) + " < requested " + std::to_string(R) + " (q=" +
            std::to_string(q) + ")");

    std::vector<IndicialRoot> all;
    for (Family f : {Family::I1, Family::I2, Family::I3, Family::I4}) {
        auto part = enumerate_family(cs, q, f, R);
        all.insert(all.end(), part.begin(), part.end());
    }
    std::stable_sort(all.begin(), all.end(), [](const IndicialRoot& a, const IndicialRoot& b) {
        return compare(a.value(), b.value()) < 0;
    });

    IndicialSet set;
    set.n = n;
    set.q = q;
    set.radius = R;
    for (auto& r : all) {
        if (!set.roots.empty() && alg_equal(set.roots.back().value, r.value())) {
            set.roots.back().multiplicity += r.multiplicity;
            set.roots.back().parts.push_back(r);
        } else {
            MergedRoot m;
            m.value = r.value();
            m.multiplicity = r.multiplicity;
            m.parts.push_back(r);
            set.roots.push_back(std::move(m));
        }
    }
    return set;
}

AlgValue nu0(const CrossSection& cs, int q) {
    const int n = cs.n();
    if (q < 0 || q > n) throw InvalidInput("degree q must lie in [0, n]");

    bool found = false;
    AlgValue best;
    for (Family f : {Family::I1, Family::I2, Family::I3, Family::I4}) {
        for (const auto& r : enumerate_family(cs, q, f, kInf)) {
            AlgValue v = r.value();
            if (v.value() < -kEps) continue;
            if (!found || compare(v, best) < 0) {
                best = v;
                found = true;
            }
        }
    }
    double tail = certified_radius(cs, q);
    if (!found)
        throw InsufficientTruncation("nu0: no nonnegative indicial root certified below " +
                                     std::to_string(tail));
    if (best.value() > tail + kEps)
        throw InsufficientTruncation("nu0: smallest found root " + std::to_string(best.value()) +
                                     " exceeds certified radius " + std::to_string(tail));
    return best;
}

double nu0_min_formula(const CrossSection& cs, int q) {
    const int n = cs.n();
    MinEigs at_q = min_eigenvalues(cs, q);
    MinEigs at_qm1 = min_eigenvalues(cs, q - 1);
    const double half_shift = n / 2.0 - q;
    if (!(at_q.lambda_p > 1.0 - half_shift * half_shift))
        throw GuardViolation("lambda_q guard fails (lambda_q <= 1-|n/2-q|^2); use nu0 instead");
    double e1 = at_q.lambda_p == kInf ? kInf : std::sqrt(half_shift * half_shift + at_q.lambda_p) - 1.0;
    double c1 = half_shift - 1.0, c2 = half_shift + 1.0;
    double e2 = at_q.gamma_p == kInf ? kInf : std::sqrt(c1 * c1 + at_q.gamma_p);
    double e3 = at_qm1.mu_p == kInf ? kInf : std::sqrt(c2 * c2 + at_qm1.mu_p);
    return std::min({e1, e2, e3});
}

HypothesisReport check_hypothesis_0notindroot(const CrossSection& cs, int q) {
    const int n = cs.n();
    HypothesisReport rep;

    Rational t = Rational(1) - Rational(n - 2 * q, 2) * Rational(n - 2 * q, 2);
    rep.applicable_bullet1 = std::abs(n / 2.0 - q) <= 0.5;
    if (rep.applicable_bullet1 && t.sign() > 0 && !exact_struct_empty(cs, q)) {
        const FormSpectrum& fs = cs.spectrum(q);
        if (t.to_double() > fs.truncation)
            throw InsufficientTruncation("0notindroot: spectrum of degree " + std::to_string(q) +
                                         " not certified past the test value");
        for (const auto& e : fs.exact)
            if (Scalar::close(e.eig, Scalar(t))) rep.bullet1 = false;
    }
    rep.applicable_bullet2 = (n % 2 == 0) && (q == n / 2 - 1);
    if (rep.applicable_bullet2) rep.bullet2 = cs.betti_at(q) == 0;
    rep.applicable_bullet3 = (n % 2 == 0) && (q == n / 2 + 1);
    if (rep.applicable_bullet3) rep.bullet3 = cs.betti_at(q - 1) == 0;

    rep.pass = rep.bullet1 && rep.bullet2 && rep.bullet3;
    if (!rep.bullet1) rep.failing = "bullet 1: 1-(n/2-q)^2 lies in Sp(Delta_N|Im d_N) on q-forms";
    else if (!rep.bullet2) rep.failing = "bullet 2: H^q(N) != 0 with q = n/2-1";
    else if (!rep.bullet3) rep.failing = "bullet 3: H^{q-1}(N) != 0 with q = n/2+1";

    rep.nu0_value = nu0(cs, q).value();
    return rep;
}

using nlohmann::json;

std::string to_json(const IndicialSet& set, int indent) {
    json roots = json::array();
    json merged = json::array();
    for (const auto& m : set.roots) {
        json parts = json::array();
        for (const auto& p : m.parts) {
            json e = {{"sign", p.sign},
                      {"sigma", p.inner_offset},
                      {"alpha2", p.alpha2.d},
                      {"delta", p.outer_shift},
                      {"family", family_name(p.family)}};
            roots.push_back({{"value", p.value().value()}, {"exact", e}, {"mult", p.multiplicity}});
            parts.push_back(e);
        }
        json mr = {{"value", m.value.value()}, {"mult", m.multiplicity}};
        if (auto r = m.value.exact_rational()) mr["exact_value"] = r->str();
        merged.push_back(mr);
    }
    json j = {{"n", set.n}, {"q", set.q}, {"radius", set.radius},
              {"roots", roots}, {"merged", merged}};
    return j.dump(indent);
}

}  // namespace conic
