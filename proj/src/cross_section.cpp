#include "conic/cross_section.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conic/errors.hpp"
#include "json.hpp"

namespace conic {

const FormSpectrum& CrossSection::spectrum(int p) const {
    static const FormSpectrum empty{{}, {}, 0, kInf};
    if (!degree_in_range(p)) return empty;
    auto it = spectra.find(p);
    if (it == spectra.end())
        throw InvalidInput("no spectrum supplied for degree " + std::to_string(p));
    return it->second;
}

double CrossSection::truncation_at(int p) const {
    if (!degree_in_range(p)) return kInf;
    return spectrum(p).truncation;
}

namespace {

// Multiplicity of the k-th coexact p-form eigenvalue (k+p)(k+m-1-p) on S^m:
//   (2k+m-1) (k+m-1)! / ( p! (m-1-p)! (k-1)! (k+p) (k+m-1-p) )
long long sphere_coexact_mult(int m, int p, int k) {
    __int128 num = 2LL * k + m - 1;
    for (int i = k; i <= k + m - 1; ++i) num *= i;  // (k+m-1)!/(k-1)!
    __int128 den = 1;
    for (int i = 2; i <= p; ++i) den *= i;
    for (int i = 2; i <= m - 1 - p; ++i) den *= i;
    den *= (k + p);
    den *= (k + m - 1 - p);
    return (long long)(num / den);
}

void sort_entries(std::vector<SpectrumEntry>& v) {
    std::sort(v.begin(), v.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.eig.d < b.eig.d; });
}

}  // namespace

CrossSection sphere_preset(int n, int jmax) {
    if (n < 2) throw InvalidInput("sphere preset needs n >= 2");
    if (jmax < 1) throw InvalidInput("sphere preset needs jmax >= 1");
    const int m = n - 1;  // dim S^m

    CrossSection cs;
    cs.dim = m;
    cs.source = "sphere:" + std::to_string(n);
    cs.betti.assign(m + 1, 0);
    cs.betti[0] = 1;
    cs.betti[m] = 1;
    if (m == 1) cs.betti = {1, 1};  // circle

    // coexact spectrum of degree p: (k+p)(k+m-1-p), k = 1..jmax
    std::vector<std::vector<SpectrumEntry>> coex(m + 1);
    for (int p = 0; p <= m - 1; ++p) {
        for (int k = 1; k <= jmax; ++k) {
            long long ev = (long long)(k + p) * (k + m - 1 - p);
            long long mult = (m == 1) ? 2 : sphere_coexact_mult(m, p, k);
            coex[p].push_back({Scalar(Rational(ev)), (int)mult});
        }
    }
    for (int p = 0; p <= m; ++p) {
        FormSpectrum fs;
        fs.coexact = (p <= m - 1) ? coex[p] : std::vector<SpectrumEntry>{};
        fs.exact = (p >= 1) ? coex[p - 1] : std::vector<SpectrumEntry>{};
        fs.harmonic_dim = cs.betti[p];
        // lists are complete below the midpoint to the (jmax+1)-th entry
        double next_c = (p <= m - 1) ? double(jmax + 1 + p) * (jmax + m - p) : kInf;
        double next_e = (p >= 1) ? double(jmax + p) * (jmax + m + 1 - p) : kInf;
        double last_c = (p <= m - 1) ? double(jmax + p) * (jmax + m - 1 - p) : 0.0;
        double last_e = (p >= 1) ? double(jmax - 1 + p) * (jmax + m - p) : 0.0;
        fs.truncation = (std::min(next_c, next_e) + std::max(last_c, last_e)) / 2.0;
        cs.spectra[p] = std::move(fs);
    }
    validate(cs);
    return cs;
}

CrossSection circle_preset(double length, int jmax) {
    if (!(length > 0)) throw InvalidInput("circle preset needs length > 0");
    if (jmax < 1) throw InvalidInput("circle preset needs jmax >= 1");

    CrossSection cs;
    cs.dim = 1;
    cs.source = "circle";
    cs.betti = {1, 1};

    FormSpectrum f0, f1;
    f0.harmonic_dim = 1;
    f1.harmonic_dim = 1;
    const double w = 2.0 * M_PI / length;
    for (int j = 1; j <= jmax; ++j) {
        double ev = (w * j) * (w * j);
        f0.coexact.push_back({Scalar::inexact(ev), 2});
        f1.exact.push_back({Scalar::inexact(ev), 2});
    }
    double cutoff = 0.5 * (w * jmax * w * jmax + w * (jmax + 1) * w * (jmax + 1));
    f0.truncation = cutoff;
    f1.truncation = cutoff;
    cs.spectra[0] = std::move(f0);
    cs.spectra[1] = std::move(f1);
    validate(cs);
    return cs;
}

CrossSection scale_metric(const CrossSection& cs, const Rational& c_squared) {
    if (c_squared.sign() <= 0) throw InvalidInput("metric scale must be positive");
    CrossSection out = cs;
    Scalar inv = Scalar(Rational(1)) / Scalar(c_squared);
    for (auto& [p, fs] : out.spectra) {
        for (auto& e : fs.exact) e.eig = e.eig * inv;
        for (auto& e : fs.coexact) e.eig = e.eig * inv;
        fs.truncation /= c_squared.to_double();
    }
    out.source = cs.source + ":scaled";
    return out;
}

CrossSection scale_metric(const CrossSection& cs, double c_squared) {
    if (!(c_squared > 0)) throw InvalidInput("metric scale must be positive");
    CrossSection out = cs;
    for (auto& [p, fs] : out.spectra) {
        for (auto& e : fs.exact) e.eig = Scalar::inexact(e.eig.d / c_squared);
        for (auto& e : fs.coexact) e.eig = Scalar::inexact(e.eig.d / c_squared);
        fs.truncation /= c_squared;
    }
    out.source = cs.source + ":scaled";
    return out;
}

void validate(const CrossSection& cs) {
    if (cs.dim < 1) throw InvalidInput("cross-section dimension must be >= 1");
    if ((int)cs.betti.size() != cs.dim + 1)
        throw InvalidInput("betti list must have dim+1 entries");
    for (int p = 0; p <= cs.dim; ++p) {
        if (cs.betti[p] != cs.betti[cs.dim - p])
            throw InvalidInput("Poincare duality fails: betti[" + std::to_string(p) +
                               "] != betti[" + std::to_string(cs.dim - p) + "]");
    }
    for (const auto& [p, fs] : cs.spectra) {
        if (p < 0 || p > cs.dim) throw InvalidInput("spectrum degree out of range");
        if (p == 0 && !fs.exact.empty())
            throw InvalidInput("degree 0 has no exact forms");
        if (p == cs.dim && !fs.coexact.empty())
            throw InvalidInput("top degree has no coexact forms");
        if (fs.harmonic_dim != cs.betti[p])
            throw InvalidInput("harmonic_dim of degree " + std::to_string(p) +
                               " disagrees with betti number");
        for (const auto* list : {&fs.exact, &fs.coexact}) {
            double prev = 0.0;
            for (const auto& e : *list) {
                if (!(e.eig.d > 0)) throw InvalidInput("eigenvalues must be positive");
                if (e.mult < 1) throw InvalidInput("multiplicities must be >= 1");
                if (e.eig.d < prev) throw InvalidInput("eigenvalue lists must be sorted");
                prev = e.eig.d;
            }
        }
    }
    // exact(p) must equal coexact(p-1) as multisets wherever both are known,
    // up to the smaller truncation.
    for (int p = 1; p <= cs.dim; ++p) {
        auto ei = cs.spectra.find(p);
        auto ci = cs.spectra.find(p - 1);
        if (ei == cs.spectra.end() || ci == cs.spectra.end()) continue;
        const auto& ex = ei->second.exact;
        const auto& co = ci->second.coexact;
        double cut = std::min(ei->second.truncation, ci->second.truncation);
        size_t a = 0, b = 0;
        while (true) {
            bool ha = a < ex.size() && ex[a].eig.d <= cut;
            bool hb = b < co.size() && co[b].eig.d <= cut;
            if (!ha && !hb) break;
            if (!ha || !hb || !Scalar::close(ex[a].eig, co[b].eig) || ex[a].mult != co[b].mult)
                throw InvalidInput("pairing fails: exact(" + std::to_string(p) +
                                   ") != coexact(" + std::to_string(p - 1) + ") as multisets");
            ++a;
            ++b;
        }
    }
}

MinEigs min_eigenvalues(const CrossSection& cs, int p) {
    if (!cs.degree_in_range(p)) return {kInf, kInf, kInf};
    const FormSpectrum& fs = cs.spectrum(p);
    MinEigs r{kInf, kInf, kInf};
    if (!fs.exact.empty()) r.lambda_p = fs.exact.front().eig.d;
    // (Im delta)^perp = Im d + harmonic ; (Im d)^perp = Im delta + harmonic
    r.mu_p = fs.harmonic_dim > 0 ? 0.0 : r.lambda_p;
    r.gamma_p = fs.harmonic_dim > 0
                    ? 0.0
                    : (fs.coexact.empty() ? kInf : fs.coexact.front().eig.d);
    return r;
}

using nlohmann::json;

CrossSection load_cross_section(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("bad JSON: ") + e.what());
    }
    CrossSection cs;
    try {
        cs.dim = j.at("dim").get<int>();
        cs.betti = j.at("betti").get<std::vector<int>>();
        if (j.contains("source")) cs.source = j["source"].get<std::string>();
        for (auto& [key, spec] : j.at("spectra").items()) {
            int p = std::stoi(key);
            FormSpectrum fs;
            fs.harmonic_dim = spec.at("harmonic_dim").get<int>();
            fs.truncation = spec.at("truncation").get<double>();
            for (auto& pair : spec.at("exact"))
                fs.exact.push_back({Scalar::inexact(pair.at(0).get<double>()),
                                    pair.at(1).get<int>()});
            for (auto& pair : spec.at("coexact"))
                fs.coexact.push_back({Scalar::inexact(pair.at(0).get<double>()),
                                      pair.at(1).get<int>()});
            sort_entries(fs.exact);
            sort_entries(fs.coexact);
            cs.spectra[p] = std::move(fs);
        }
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("schema violation: ") + e.what());
    }
    validate(cs);
    return cs;
}

std::string to_json(const CrossSection& cs, int indent) {
    json spectra = json::object();
    for (const auto& [p, fs] : cs.spectra) {
        json ex = json::array(), co = json::array();
        for (const auto& e : fs.exact) ex.push_back({e.eig.d, e.mult});
        for (const auto& e : fs.coexact) co.push_back({e.eig.d, e.mult});
        spectra[std::to_string(p)] = {{"exact", ex},
                                      {"coexact", co},
                                      {"harmonic_dim", fs.harmonic_dim},
                                      {"truncation", fs.truncation}};
    }
    json j = {{"dim", cs.dim}, {"betti", cs.betti}, {"spectra", spectra}, {"source", cs.source}};
    return j.dump(indent);
}

}  // namespace conic
