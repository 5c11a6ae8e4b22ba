#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "conic/rational.hpp"

namespace conic {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SpectrumEntry {
    Scalar eig;  // eigenvalue of Delta_N, > 0
    int mult = 1;
};

// Hodge-decomposed spectrum of Delta_N on p-forms.
//   exact   = Sp(Delta_N | Im d_N)      (S^p_{d_N})
//   coexact = Sp(Delta_N | Im delta_N)  (S^p_{delta_N})
// Lists are sorted ascending and certified complete for eigenvalues <= truncation.
struct FormSpectrum {
    std::vector<SpectrumEntry> exact;
    std::vector<SpectrumEntry> coexact;
    int harmonic_dim = 0;
    double truncation = 0.0;
};

// Closed cross-section (N, h0) of dimension n-1 with its form spectra.
// Degrees outside [0, dim] are structurally empty (truncation +inf);
// degrees inside [0, dim] must be present before they are queried.
class CrossSection {
public:
    int dim = 0;                       // dim N = n - 1
    std::vector<int> betti;            // b_0 .. b_dim
    std::map<int, FormSpectrum> spectra;
    std::string source = "custom";

    int n() const { return dim + 1; }
    int betti_at(int p) const { return (p < 0 || p > dim) ? 0 : betti[p]; }

    bool degree_in_range(int p) const { return p >= 0 && p <= dim; }
    // Throws InvalidInput if p is in range but no spectrum was supplied.
    const FormSpectrum& spectrum(int p) const;
    // Completeness cutoff for degree p (+inf when structurally empty).
    double truncation_at(int p) const;
};

struct MinEigs {
    double lambda_p;  // min Sp(Delta_N|Im d_N),          +inf if empty
    double mu_p;      // min Sp(Delta_N|(Im delta_N)^perp), +inf if empty
    double gamma_p;   // min Sp(Delta_N|(Im d_N)^perp),     +inf if empty
};

// Round sphere S^{n-1} with curvature +1; exact form spectra of all degrees
// listed through radial index jmax (j >= 1; j = 0 would put 0 in Im d_N).
CrossSection sphere_preset(int n, int jmax = 30);

// Circle of length L (dim-1 cross-section for 2-D demos).
CrossSection circle_preset(double length, int jmax = 30);

// Metric rescaling h -> c^2 h; all eigenvalues divide by c^2.
CrossSection scale_metric(const CrossSection& cs, const Rational& c_squared);
CrossSection scale_metric(const CrossSection& cs, double c_squared);

// JSON ingestion/serialization per the documented schema. Validates the
// Poincare-duality and exact(p) == coexact(p-1) pairing invariants.
CrossSection load_cross_section(const std::string& json_text);
std::string to_json(const CrossSection& cs, int indent = -1);

void validate(const CrossSection& cs);

MinEigs min_eigenvalues(const CrossSection& cs, int p);

}  // namespace conic
