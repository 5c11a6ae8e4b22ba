#include "conic/riesz.hpp"

#include <algorithm>
#include <cmath>

#include "conic/errors.hpp"
#include "json.hpp"

namespace conic {

const char* ternary_name(Ternary t) {
    switch (t) {
        case Ternary::Yes: return "yes";
        case Ternary::No: return "no";
        default: return "unknown";
    }
}

namespace {

constexpr double kEps = 1e-12;

// Is this signed root killed by d (resp. delta)?  Eq-level filtering:
//   I(d):     I1 n {-(n/2-q-1)},  all of I2,  the -(rho-1) branch of I3,
//             the +(rho+1) branch of I4.
//   I(delta): all of I1,  I2 n {+(n/2-q+1)},  same I3/I4 branches.
bool killed_by_d(const IndicialRoot& r) {
    switch (r.family) {
        case Family::I1:
            // only the harmonic point -(n/2-q-1), i.e. sign*|c| == -c
            if (r.alpha2.d != 0.0) return false;
            return r.offset.sign() == 0 || r.sign == -r.offset.sign();
        case Family::I2: return true;
        case Family::I3: return r.sign == -1;  // the -(rho-1) branch
        default: return r.sign == +1;          // the +(rho+1) branch
    }
}

bool killed_by_delta(const IndicialRoot& r) {
    switch (r.family) {
        case Family::I1: return true;
        case Family::I2:
            // only the harmonic point +(n/2-q+1)
            if (r.alpha2.d != 0.0) return false;
            return r.offset.sign() == 0 || r.sign == r.offset.sign();
        case Family::I3: return r.sign == -1;
        default: return r.sign == +1;
    }
}

// Supremum of values a *survivor* root hidden beyond the spectral cutoffs
// could take on the negative axis; -inf when none is possible. Hidden roots
// sit strictly below their family bound (alpha^2 > cutoff strictly).
double hidden_survivor_sup(const CrossSection& cs, int q, bool for_d) {
    const int n = cs.n();
    double sup = -kInf;

    // I1 survives d (except one harmonic point); I2 survives delta.
    Family surviving = for_d ? Family::I1 : Family::I2;
    double lam = family_source_cutoff(cs, q, surviving);
    if (lam != kInf) {
        double c = for_d ? (n - 2.0 * q - 2.0) / 2.0 : (n - 2.0 * q + 2.0) / 2.0;
        sup = std::max(sup, -std::sqrt(c * c + lam));
    }
    // I3's survivor branch +(rho-1) is negative only when rho < 1;
    // I4's survivor branch -(rho+1) is always negative.
    double lam_q = family_source_cutoff(cs, q, Family::I3);
    if (lam_q != kInf) {
        double c = (n - 2.0 * q) / 2.0;
        double t = std::sqrt(c * c + lam_q);
        if (t < 1.0) sup = std::max(sup, 0.0);  // hidden roots may approach 0^-
        sup = std::max(sup, -(t + 1.0));
    }
    return sup;
}

NuBound nu_index_for(const CrossSection& cs, int q, bool for_d) {
    bool found = false;
    AlgValue best;  // max negative survivor
    for (Family f : {Family::I1, Family::I2, Family::I3, Family::I4}) {
        for (const auto& r : enumerate_family(cs, q, f, kInf)) {
            if (for_d ? killed_by_d(r) : killed_by_delta(r)) continue;
            AlgValue v = r.value();
            if (v.value() >= -kEps) continue;
            if (!found || compare(v, best) > 0) {
                best = v;
                found = true;
            }
        }
    }
    double sup = hidden_survivor_sup(cs, q, for_d);
    if (!found) {
        if (sup == -kInf) return NuBound::absent();
        return NuBound::at_least(-sup);
    }
    if (best.value() < sup - kEps)
        throw InsufficientTruncation(
            "nu index: survivor roots beyond truncation could exceed the found maximum");
    return NuBound::of(negated(best).to_scalar());
}

Scalar scalar_min(const Scalar& a, const Scalar& b) { return a.d <= b.d ? a : b; }

Endpoint make_endpoint(const Scalar& numerator, const Scalar& denominator) {
    Endpoint e;
    if (denominator.d <= 0.0) {
        e.infinite = true;
        e.value = kInf;
        return e;
    }
    Scalar v = numerator / denominator;
    e.value = v.d;
    if (v.exact) e.exact = *v.exact;
    return e;
}

Scalar positive_part(const Scalar& s) {
    if (s.d > 0) return s;
    return Scalar(Rational(0));
}

// n / (n - (n/2 + 1 - nu_ker)_+)
Endpoint lp_lower(int n, const Scalar& nu_ker) {
    Scalar half(Rational(n, 2));
    Scalar gap = positive_part(half + Scalar(Rational(1)) - nu_ker);
    return make_endpoint(Scalar(Rational(n)), Scalar(Rational(n)) - gap);
}

// n / (n/2 - nu)_+
Endpoint lp_upper(int n, const Scalar& nu) {
    Scalar gap = positive_part(Scalar(Rational(n, 2)) - nu);
    return make_endpoint(Scalar(Rational(n)), gap);
}

}  // namespace

std::string Endpoint::str() const {
    if (infinite) return "inf";
    if (exact) return exact->str();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

bool Interval::contains(double p) const {
    if (!(p > lo.value)) return false;
    return hi.infinite || p < hi.value;
}

std::string Interval::str() const { return "(" + lo.str() + ", " + hi.str() + ")"; }

std::pair<std::vector<IndicialRoot>, std::vector<IndicialRoot>> indicial_sets_d_delta(
    const CrossSection& cs, int q, double R) {
    double cert = certified_radius(cs, q);
    if (R > cert + kEps)
        throw InsufficientTruncation("indicial sets of d/delta certified only to radius " +
                                     std::to_string(cert));
    std::vector<IndicialRoot> id, idelta;
    for (Family f : {Family::I1, Family::I2, Family::I3, Family::I4}) {
        for (const auto& r : enumerate_family(cs, q, f, R)) {
            if (killed_by_d(r)) id.push_back(r);
            if (killed_by_delta(r)) idelta.push_back(r);
        }
    }
    return {id, idelta};
}

NuIndices nu_indices(const CrossSection& cs, int q) {
    NuIndices out;
    out.nu_d = nu_index_for(cs, q, /*for_d=*/true);
    out.nu_delta = nu_index_for(cs, q, /*for_d=*/false);
    // nu_D = min over the ones that exist.
    auto pick = [&](const NuBound& a, const NuBound& b) -> NuBound {
        if (a.kind == NuBound::Kind::Absent) return b;
        if (b.kind == NuBound::Kind::Absent) return a;
        if (a.kind == NuBound::Kind::Value && b.kind == NuBound::Kind::Value)
            return a.value.d <= b.value.d ? a : b;
        // a lower bound only matters if it could undercut the other value
        if (a.kind == NuBound::Kind::Value && b.kind == NuBound::Kind::AtLeast)
            return a.value.d <= b.bound ? a : NuBound::at_least(std::min(a.value.d, b.bound));
        if (b.kind == NuBound::Kind::Value && a.kind == NuBound::Kind::AtLeast)
            return b.value.d <= a.bound ? b : NuBound::at_least(std::min(b.value.d, a.bound));
        return NuBound::at_least(std::min(a.bound, b.bound));
    };
    out.nu_D = pick(out.nu_d, out.nu_delta);
    return out;
}

double nu_D_closed_form(const CrossSection& cs, int q, MuPrimeConvention conv) {
    const int n = cs.n();
    MinEigs at_q = min_eigenvalues(cs, q);
    MinEigs at_qm1 = min_eigenvalues(cs, q - 1);
    const double c0 = n / 2.0 - q;
    if (!(at_q.lambda_p > 1.0 - c0 * c0))
        throw GuardViolation("lambda_q guard fails; use the set-theoretic nu_indices");

    // gamma'_q: gamma_q for q >= n/2-1, else lambda_{q+1}
    double gamma_prime;
    if (q >= n / 2.0 - 1.0) {
        gamma_prime = at_q.gamma_p;
    } else {
        gamma_prime = min_eigenvalues(cs, q + 1).lambda_p;
    }
    // mu'_{q-1}: corrected rule mu_{q-1} for q <= n/2+1, else lambda_{q-1}
    // (derived from the set-theoretic definition). The paper's printed branch
    // conditions on the subscript p = q-1 overlap ("p <= n/2+1" vs "p > n/2-1");
    // PaperLiteral resolves the overlap in favour of the first branch, which
    // moves the switch to q = p+1 > n/2+2.
    double mu_prime;
    if (conv == MuPrimeConvention::Corrected) {
        mu_prime = (q <= n / 2.0 + 1.0) ? at_qm1.mu_p : at_qm1.lambda_p;
    } else {
        mu_prime = (q - 1 <= n / 2.0 + 1.0) ? at_qm1.mu_p : at_qm1.lambda_p;
    }

    double e1 = at_q.lambda_p == kInf ? kInf : std::sqrt(c0 * c0 + at_q.lambda_p) + 1.0;
    double c1 = c0 - 1.0, c2 = c0 + 1.0;
    double e2 = gamma_prime == kInf ? kInf : std::sqrt(c1 * c1 + gamma_prime);
    double e3 = mu_prime == kInf ? kInf : std::sqrt(c2 * c2 + mu_prime);
    return std::min({e1, e2, e3});
}

Scalar nu_ker(const CrossSection& cs, int q, const TopologyInput& topo) {
    AlgValue v0 = nu0(cs, q);
    if (!(v0.value() > 0)) throw InvalidInput("nu_ker requires nu0 > 0");
    Scalar cap = v0.to_scalar() + Scalar(Rational(2));
    if (topo.kernel_dim == 0) return cap;
    if (!topo.kernel_decay) throw InvalidInput("kernel decay required when kernel_dim > 0");
    double decay = *topo.kernel_decay;
    if (!(decay > 1.0))
        throw InvalidInput("kernel decay must exceed 1 in the no-resonance regime");

    IndicialSet set = indicial_set(cs, q, decay);
    const MergedRoot* snap = nullptr;
    for (const auto& r : set.roots) {
        double v = r.value.value();
        if (v >= -kEps && v <= decay + 1e-9) snap = &r;
    }
    if (!snap) throw InvalidInput("kernel decay lies below every nonnegative indicial root");
    return scalar_min(cap, snap->value.to_scalar());
}

RieszReport riesz_interval(const CrossSection& cs, int q, const TopologyInput& topo) {
    const int n = cs.n();
    RieszReport rep;
    rep.n = n;
    rep.q = q;
    if (topo.n0 < 3.0) throw InvalidInput("asymptotic conicity order n0 must be >= 3");

    HypothesisReport hyp = check_hypothesis_0notindroot(cs, q);
    AlgValue v0 = nu0(cs, q);
    rep.nu0 = v0.to_scalar();
    rep.hypothesis_ok = hyp.pass && v0.value() > 0;
    rep.audit.push_back({"0 not in I(P_b)",
                         rep.hypothesis_ok ? AuditEntry::Status::Pass : AuditEntry::Status::Fail,
                         "nu0 = " + std::to_string(v0.value())});
    rep.audit.push_back({"no zero-resonance", AuditEntry::Status::Assumed,
                         "input assumption, not provable from spectral data"});
    rep.audit.push_back({"asymptotically conic to order n0 >= 3", AuditEntry::Status::Pass,
                         "n0 = " + std::to_string(topo.n0)});
    if (!rep.hypothesis_ok) {
        rep.failing_hypothesis = hyp.failing.empty() ? "0 in I(P_b)" : hyp.failing;
        rep.sharp_status = "not certified: hypothesis failure";
        return rep;
    }

    rep.nu_ker = nu_ker(cs, q, topo);
    NuIndices idx = nu_indices(cs, q);
    rep.nu_d = idx.nu_d;
    rep.nu_delta = idx.nu_delta;
    rep.nu_D = idx.nu_D;
    if (topo.kernel_dim > 0)
        rep.audit.push_back({"kernel decay snapped to indicial lattice", AuditEntry::Status::Pass,
                             "nu_ker = " + std::to_string(rep.nu_ker.d)});

    rep.sufficient = {lp_lower(n, rep.nu_ker), lp_upper(n, rep.nu0)};

    // Sharpness guard: n0 > nu0+2 needed when nu0 < n/2.
    bool guard = rep.nu0.d >= n / 2.0 || topo.n0 > rep.nu0.d + 2.0;
    rep.audit.push_back({"sharpness guard (n0 > nu0+2 or nu0 >= n/2)",
                         guard ? AuditEntry::Status::Pass : AuditEntry::Status::Fail,
                         guard ? "" : "only the sufficient interval is asserted"});

    // Case selection.
    bool low_region = q < n / 2.0 - 1.0, high_region = q > n / 2.0 + 1.0;
    Ternary relevant = Ternary::Yes;  // "injective" default: middle band forces Case 2
    std::string which;
    if (low_region) {
        relevant = topo.e_injective_low;
        which = "H^{q+1}(Mbar,dMbar) -> H^{q+1}(Mbar)";
    } else if (high_region) {
        relevant = topo.e_injective_high;
        which = "H^{n-q+1}(Mbar,dMbar) -> H^{n-q+1}(Mbar)";
    }
    if (low_region || high_region)
        rep.audit.push_back({"cohomology map injectivity (" + which + ")",
                             relevant == Ternary::Yes     ? AuditEntry::Status::Pass
                             : relevant == Ternary::No    ? AuditEntry::Status::Fail
                                                          : AuditEntry::Status::Unknown,
                             ternary_name(relevant)});

    // Case 2 upper endpoint needs min(nu_D, nu_ker).
    auto case2_interval = [&]() -> std::optional<Interval> {
        Scalar nu_eff;
        if (rep.nu_D.kind == NuBound::Kind::Value)
            nu_eff = scalar_min(rep.nu_D.value, rep.nu_ker);
        else if (rep.nu_D.kind == NuBound::Kind::Absent)
            nu_eff = rep.nu_ker;
        else if (rep.nu_ker.d <= rep.nu_D.bound)
            nu_eff = rep.nu_ker;
        else
            return std::nullopt;  // nu_D only bounded below, cannot resolve the min
        return Interval{lp_lower(n, rep.nu_ker), lp_upper(n, nu_eff)};
    };

    if ((low_region || high_region) && relevant == Ternary::No) {
        rep.case_id = 1;
        if (guard) {
            rep.sharp = rep.sufficient;
            rep.sharp_status = "certified";
        } else {
            rep.sharp_status = "not certified: sharpness guard fails";
        }
    } else if ((low_region || high_region) && relevant == Ternary::Unknown) {
        rep.case_id = 0;
        rep.sharp_status = "not certified: injectivity unknown";
        rep.sharp_candidates.emplace_back("case 1 (map not injective)", rep.sufficient);
        if (auto c2 = case2_interval())
            rep.sharp_candidates.emplace_back("case 2 (map injective)", *c2);
    } else {
        rep.case_id = 2;
        auto c2 = case2_interval();
        if (!c2) {
            rep.sharp_status = "not certified: nu_D only bounded below by truncation";
        } else if (guard) {
            rep.sharp = *c2;
            rep.sharp_status = "certified";
        } else {
            rep.sharp_status = "not certified: sharpness guard fails";
            rep.sharp_candidates.emplace_back("case 2 (if guard held)", *c2);
        }
    }
    return rep;
}

Interval generic_degree_interval(int n, int q, bool kernel_present) {
    Rational a = Rational(n - 2 * q, 2);
    if (a.sign() < 0) a = -a;
    if (!(a > Rational(1))) throw GuardViolation("corollary out of range: needs |q - n/2| > 1");
    Rational half(n, 2);

    Endpoint lo;
    if (!kernel_present) {
        lo = make_endpoint(Scalar(Rational(n)), Scalar(half + a));
    } else {
        Endpoint two;
        two.value = 2.0;
        two.exact = Rational(2);
        Endpoint alt = make_endpoint(Scalar(Rational(n)), Scalar(half - Rational(2) + a));
        lo = (alt.infinite || alt.value > 2.0) ? two : alt;
    }
    Endpoint hi = make_endpoint(Scalar(Rational(n)), Scalar(half + Rational(1) - a));
    return {lo, hi};
}

SobolevReport sobolev_exponents(int n) {
    if (n < 3) throw InvalidInput("Sobolev exponents need n >= 3");
    SobolevReport rep;
    rep.p = Rational(2 * n, n + 2);
    rep.p_conjugate = Rational(2 * n, n - 2);
    return rep;
}

SobolevReport sobolev_exponents(int n, const CrossSection& cs, int q, const TopologyInput& topo) {
    SobolevReport rep = sobolev_exponents(n);
    if (cs.n() != n) throw InvalidInput("cross-section dimension disagrees with n");
    AlgValue v0 = nu0(cs, q);
    rep.audit.push_back({"nu0 > 0", v0.value() > 0 ? AuditEntry::Status::Pass
                                                   : AuditEntry::Status::Fail,
                         "nu0 = " + std::to_string(v0.value())});
    if (topo.kernel_dim > 0) {
        Scalar nk = nu_ker(cs, q, topo);
        rep.audit.push_back({"nu_ker > 2", nk.d > 2.0 ? AuditEntry::Status::Pass
                                                      : AuditEntry::Status::Fail,
                             "nu_ker = " + std::to_string(nk.d)});
    }
    rep.audit.push_back({"ker_{L^2} = ker_{L^r} for r in [p, p']", AuditEntry::Status::Assumed,
                         "input assumption (no zero-resonance regime)"});
    return rep;
}

using nlohmann::json;

namespace {

json endpoint_json(const Endpoint& e) {
    json j;
    j["value"] = e.infinite ? "inf" : json(e.value);
    if (e.exact) j["exact"] = e.exact->str();
    return j;
}

json interval_json(const Interval& iv) {
    return {{"lo", endpoint_json(iv.lo)}, {"hi", endpoint_json(iv.hi)}, {"str", iv.str()}};
}

json nubound_json(const NuBound& b) {
    switch (b.kind) {
        case NuBound::Kind::Value: {
            json j = {{"kind", "value"}, {"value", b.value.d}};
            if (b.value.exact) j["exact"] = b.value.exact->str();
            return j;
        }
        case NuBound::Kind::AtLeast: return {{"kind", "at_least"}, {"bound", b.bound}};
        default: return {{"kind", "absent"}};
    }
}

const char* status_name(AuditEntry::Status s) {
    switch (s) {
        case AuditEntry::Status::Pass: return "pass";
        case AuditEntry::Status::Fail: return "fail";
        case AuditEntry::Status::Unknown: return "unknown";
        default: return "assumed";
    }
}

}  // namespace

std::string to_json(const RieszReport& rep, int indent) {
    json audit = json::array();
    for (const auto& a : rep.audit)
        audit.push_back(
            {{"hypothesis", a.hypothesis}, {"status", status_name(a.status)}, {"detail", a.detail}});
    json j = {{"n", rep.n},
              {"q", rep.q},
              {"hypothesis_ok", rep.hypothesis_ok},
              {"nu0", rep.nu0.d},
              {"nu_d", nubound_json(rep.nu_d)},
              {"nu_delta", nubound_json(rep.nu_delta)},
              {"nu_D", nubound_json(rep.nu_D)},
              {"case", rep.case_id},
              {"sufficient_interval", interval_json(rep.sufficient)},
              {"sharp_status", rep.sharp_status},
              {"audit", audit}};
    if (rep.nu0.exact) j["nu0_exact"] = rep.nu0.exact->str();
    if (rep.hypothesis_ok) {
        j["nu_ker"] = rep.nu_ker.d;
        if (rep.nu_ker.exact) j["nu_ker_exact"] = rep.nu_ker.exact->str();
    }
    if (!rep.failing_hypothesis.empty()) j["failing_hypothesis"] = rep.failing_hypothesis;
    if (rep.sharp) j["sharp_interval"] = interval_json(*rep.sharp);
    if (!rep.sharp_candidates.empty()) {
        json c = json::array();
        for (const auto& [label, iv] : rep.sharp_candidates)
            c.push_back({{"label", label}, {"interval", interval_json(iv)}});
        j["sharp_candidates"] = c;
    }
    return j.dump(indent);
}

}  // namespace conic
