#pragma once

#include <functional>
#include <string>
#include <vector>

#include "conic/cross_section.hpp"

namespace conic {

enum class BoundaryKind { ConicTip, SmoothPole };

// Warped product (0, L) x N with metric dr^2 + f(r)^2 h; the mode operator on
// functions is -u'' - (n-1) (f'/f) u' + mu / f^2 u with the Friedrichs
// condition at a conic tip (u bounded for mu = 0, u -> 0 for mu > 0).
struct RadialProblem {
    std::function<double(double)> profile;  // f > 0 on (0, L), ~ slope * r at closed ends
    double length = 1.0;
    int ambient_dim = 2;    // manifold dimension n; radial weight f^{n-1}
    double mu_mode = 0.0;   // cross-section eigenvalue of the separated mode
    double h = 1e-2;        // target grid step
    BoundaryKind left = BoundaryKind::SmoothPole;
    BoundaryKind right = BoundaryKind::SmoothPole;
    double left_slope = 1.0;   // expected |f'| at r = 0
    double right_slope = 1.0;  // expected |f'| at r = L
};

struct RadialEigenvalues {
    std::vector<double> values;      // Richardson-extrapolated
    std::vector<double> raw_h;       // at the target step
    std::vector<double> raw_h2;      // at half the step
    std::vector<double> disc_error;  // |extrapolated - raw_h2|
    std::vector<double> richardson_ratio;  // (raw_h-raw_h2)/(raw_h2-raw_h4); empty unless requested
};

// k smallest eigenvalues by symmetric finite differences on a staggered grid
// plus Sturm-sequence bisection; Richardson extrapolation across h, h/2
// (and h/4 when with_ratio is set).
RadialEigenvalues radial_eigenvalues(const RadialProblem& problem, int k, bool with_ratio = false);

// Round 2-sphere as a surface of revolution: f(r) = sin r on [0, pi].
RadialProblem sphere_surface_problem(int mode_m, double h);

// Degenerating family profile for the n = 3 demonstrator: cone of slope a
// over the unit S^2 resolved at scale eps by the asymptotically conic piece,
// capped by a hemisphere; eps = 0 gives the conic limit space.
struct GluedProfile {
    std::function<double(double)> f;
    double length;
    double slope;  // a
    double eps;
};
GluedProfile glued_profile(double slope_a, double eps);

struct DemoRow {
    double eps;                   // 0 for the limit space
    std::vector<double> values;   // tracked eigenvalues (smallest positive)
    std::vector<double> diffs;    // |lambda_k(eps) - lambda_k(0)|, empty for eps = 0
    std::vector<double> disc_error;
};

struct DemoResult {
    double slope;
    std::vector<double> epsilons;
    std::vector<DemoRow> rows;          // first row is the eps = 0 limit
    bool diffs_decreasing = false;      // per tracked eigenvalue along the eps list
    double max_ratio_deviation = 0.0;   // worst |richardson ratio - 4| observed
    std::vector<double> ratios;         // per tracked eigenvalue of the limit solve
    bool witt_ok = false;               // modified Witt for the scaled cross-section
};

// Spectral-convergence demonstrator (functions, n = 3): glued family over
// S^2 scaled by a, k smallest positive eigenvalues tracked along epsilons.
DemoResult spectral_convergence_demo(double slope_a, std::vector<double> epsilons, int k,
                                     double h = 2e-3);

std::string demo_csv(const DemoResult& demo);

}  // namespace conic
