#include "conic/radial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conic/errors.hpp"
#include "conic/torsion.hpp"

namespace conic {

namespace {

// Sturm-sequence eigenvalue count for a symmetric tridiagonal matrix:
// number of eigenvalues strictly below x.
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double x) {
    int count = 0;
    double d = 1.0;
    const size_t m = diag.size();
    for (size_t i = 0; i < m; ++i) {
        double offsq = i ? off[i - 1] * off[i - 1] : 0.0;
        d = diag[i] - x - offsq / d;
        if (d == 0.0) d = -1e-300;
        if (d < 0.0) ++count;
    }
    return count;
}

// k smallest eigenvalues by bisection.
std::vector<double> tridiag_smallest(const std::vector<double>& diag,
                                     const std::vector<double>& off, int k) {
    const size_t m = diag.size();
    double lo = diag[0], hi = diag[0];
    for (size_t i = 0; i < m; ++i) {
        double r = (i ? std::abs(off[i - 1]) : 0.0) + (i + 1 < m ? std::abs(off[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    std::vector<double> out;
    double scale = std::max(std::abs(lo), std::abs(hi));
    for (int j = 0; j < k && j < (int)m; ++j) {
        double a = lo, b = hi;
        for (int it = 0; it < 200 && b - a > 1e-14 * scale; ++it) {
            double mid = 0.5 * (a + b);
            if (sturm_count(diag, off, mid) >= j + 1) b = mid;
            else a = mid;
        }
        out.push_back(0.5 * (a + b));
    }
    return out;
}

// Staggered-grid discretization of -(f^{n-1} u')'/f^{n-1} + mu/f^2 u.
std::vector<double> solve_modes(const RadialProblem& p, int m, int k) {
    const double hh = p.length / m;
    std::vector<double> node_f(m), face_w(m + 1);
    for (int i = 0; i < m; ++i) {
        node_f[i] = p.profile((i + 0.5) * hh);
        if (!(node_f[i] > 0.0))
            throw InvalidInput("radial profile must be positive in the interior");
    }
    for (int i = 1; i < m; ++i) face_w[i] = std::pow(p.profile(i * hh), p.ambient_dim - 1);
    face_w[0] = face_w[m] = 0.0;  // closed ends: zero-flux natural condition

    std::vector<double> diag(m), off(m - 1);
    for (int i = 0; i < m; ++i) {
        double w = std::pow(node_f[i], p.ambient_dim - 1);
        double a = (face_w[i] + face_w[i + 1]) / (hh * hh) +
                   p.mu_mode / (node_f[i] * node_f[i]) * w;
        diag[i] = a / w;
    }
    for (int i = 0; i + 1 < m; ++i) {
        double wi = std::pow(node_f[i], p.ambient_dim - 1);
        double wj = std::pow(node_f[i + 1], p.ambient_dim - 1);
        off[i] = -face_w[i + 1] / (hh * hh) / std::sqrt(wi * wj);
    }
    return tridiag_smallest(diag, off, k);
}

void check_boundary_fit(const RadialProblem& p) {
    double delta = std::min(1e-5, p.length * 1e-5);
    double left = p.profile(delta) / delta;
    double right = p.profile(p.length - delta) / delta;
    if (std::abs(left - p.left_slope) > 0.1 * std::max(1.0, p.left_slope))
        throw InvalidInput("left boundary tag inconsistent with profile slope " +
                           std::to_string(left));
    if (std::abs(right - p.right_slope) > 0.1 * std::max(1.0, p.right_slope))
        throw InvalidInput("right boundary tag inconsistent with profile slope " +
                           std::to_string(right));
}

}  // namespace

RadialEigenvalues radial_eigenvalues(const RadialProblem& problem, int k, bool with_ratio) {
    if (k < 1) throw InvalidInput("need k >= 1 eigenvalues");
    if (!(problem.mu_mode >= 0)) throw InvalidInput("mode eigenvalue must be nonnegative");
    check_boundary_fit(problem);
    int m0 = std::max(48, (int)std::lround(problem.length / problem.h));

    RadialEigenvalues out;
    out.raw_h = solve_modes(problem, m0, k);
    out.raw_h2 = solve_modes(problem, 2 * m0, k);
    std::vector<double> raw_h4;
    if (with_ratio) raw_h4 = solve_modes(problem, 4 * m0, k);
    for (int j = 0; j < (int)out.raw_h.size(); ++j) {
        double extr = with_ratio
                          ? (4.0 * raw_h4[j] - out.raw_h2[j]) / 3.0
                          : (4.0 * out.raw_h2[j] - out.raw_h[j]) / 3.0;
        out.values.push_back(extr);
        out.disc_error.push_back(std::abs(extr - (with_ratio ? raw_h4[j] : out.raw_h2[j])));
        if (with_ratio) {
            double num = out.raw_h[j] - out.raw_h2[j];
            double den = out.raw_h2[j] - raw_h4[j];
            out.richardson_ratio.push_back(den != 0.0 ? num / den : 0.0);
        }
    }
    return out;
}

RadialProblem sphere_surface_problem(int mode_m, double h) {
    RadialProblem p;
    p.profile = [](double r) { return std::sin(r); };
    p.length = M_PI;
    p.ambient_dim = 2;
    p.mu_mode = double(mode_m) * mode_m;
    p.h = h;
    p.left = BoundaryKind::SmoothPole;
    p.right = BoundaryKind::SmoothPole;
    return p;
}

namespace {

double quintic_blend(double t) { return t * t * t * (10.0 + t * (-15.0 + 6.0 * t)); }

double blended(double u, double v, double t) {
    double w = quintic_blend(t);
    return (1.0 - w) * u + w * v;
}

}  // namespace

GluedProfile glued_profile(double slope_a, double eps) {
    if (!(slope_a > 0.0) || slope_a > 1.0) throw InvalidInput("slope a must lie in (0, 1]");
    if (eps < 0.0 || eps > 7.0 / 9.0) throw InvalidInput("eps must lie in [0, 7/9)");
    const double a = slope_a;
    const double L = 1.0 + a * M_PI / 2.0;

    auto cap = [a, L](double r) { return a * std::sin((L - r) / a); };
    // limit profile: exact cone to 7/8, quintic C^2 collar, hemispherical cap
    auto f0 = [a, L, cap](double r) {
        if (r <= 7.0 / 8.0) return a * r;
        if (r >= 9.0 / 8.0) return cap(r);
        return blended(a * r, cap(r), (r - 7.0 / 8.0) * 4.0);
    };
    // asymptotically conic piece: smooth pole resolving into the same cone
    auto fm = [a](double s) {
        if (s <= 7.0 / 8.0) return s;
        if (s >= 9.0 / 8.0) return a * s;
        return blended(s, a * s, (s - 7.0 / 8.0) * 4.0);
    };

    GluedProfile g;
    g.length = L;
    g.slope = a;
    g.eps = eps;
    if (eps == 0.0) {
        g.f = f0;
    } else {
        g.f = [eps, f0, fm](double r) {
            return (r <= 7.0 / 8.0) ? eps * fm(r / eps) : f0(r);
        };
    }
    return g;
}

DemoResult spectral_convergence_demo(double slope_a, std::vector<double> epsilons, int k,
                                     double h) {
    if (k < 1) throw InvalidInput("need k >= 1 tracked eigenvalues");
    std::sort(epsilons.begin(), epsilons.end(), std::greater<double>());
    if (epsilons.empty() || !(epsilons.back() > 0.0))
        throw InvalidInput("epsilon list must be positive");

    DemoResult demo;
    demo.slope = slope_a;
    demo.epsilons = epsilons;

    // modified Witt for the scaled cross-section S^2_a (relevant degrees)
    CrossSection cs = scale_metric(sphere_preset(3, 20), slope_a * slope_a);
    demo.witt_ok = check_modified_witt(cs).pass;
    if (!demo.witt_ok)
        throw InvalidInput("slope a violates the modified Witt condition for S^2_a");

    const double drop_tol = 1e-3;  // exclude the constant mode's ~0 eigenvalue

    // union of per-mode radial spectra, expanded with multiplicity 2l+1
    auto solve_family = [&](double eps, bool with_ratio, std::vector<double>& ratios_out) {
        GluedProfile g = glued_profile(slope_a, eps);
        std::vector<std::pair<double, double>> all;  // (value, disc_error)
        std::vector<double> ratios;
        double kth_bound = kInf;
        for (int l = 0;; ++l) {
            double mu = double(l) * (l + 1);
            // min-max lower bound on this mode's bottom eigenvalue
            double fmax = 0.0;
            for (int i = 0; i <= 256; ++i)
                fmax = std::max(fmax, g.f(g.length * i / 256.0));
            if (l > 0 && mu / (fmax * fmax) > kth_bound) break;
            RadialProblem p;
            p.profile = g.f;
            p.length = g.length;
            p.ambient_dim = 3;
            p.mu_mode = mu;
            p.h = (eps > 0.0) ? std::min(h, eps / 12.0) : h;
            p.left = (eps == 0.0 && l > 0) ? BoundaryKind::ConicTip : BoundaryKind::SmoothPole;
            p.left_slope = (eps == 0.0) ? slope_a : 1.0;
            p.right_slope = 1.0;
            RadialEigenvalues ev = radial_eigenvalues(p, k + 1, with_ratio);
            for (size_t j = 0; j < ev.values.size(); ++j) {
                if (ev.values[j] < drop_tol) continue;
                for (int copy = 0; copy < 2 * l + 1; ++copy)
                    all.emplace_back(ev.values[j], ev.disc_error[j]);
                if (with_ratio && !ev.richardson_ratio.empty())
                    ratios.push_back(ev.richardson_ratio[j]);
            }
            std::sort(all.begin(), all.end());
            if ((int)all.size() >= k) kth_bound = all[k - 1].first;
            if (l > 2 * k + 8) break;
        }
        if ((int)all.size() < k)
            throw InvalidInput("could not collect enough eigenvalues; increase k headroom");
        all.resize(k);
        ratios_out = ratios;
        DemoRow row;
        row.eps = eps;
        for (auto& [v, e] : all) {
            row.values.push_back(v);
            row.disc_error.push_back(e);
        }
        return row;
    };

    std::vector<double> limit_ratios;
    DemoRow limit = solve_family(0.0, true, limit_ratios);
    demo.rows.push_back(limit);
    demo.ratios = limit_ratios;
    for (double r : limit_ratios)
        demo.max_ratio_deviation = std::max(demo.max_ratio_deviation, std::abs(r - 4.0));

    for (double eps : epsilons) {
        std::vector<double> unused;
        DemoRow row = solve_family(eps, false, unused);
        for (int j = 0; j < k; ++j)
            row.diffs.push_back(std::abs(row.values[j] - limit.values[j]));
        demo.rows.push_back(row);
    }

    demo.diffs_decreasing = true;
    for (int j = 0; j < k; ++j) {
        for (size_t m = 2; m < demo.rows.size(); ++m) {
            if (!(demo.rows[m].diffs[j] < demo.rows[m - 1].diffs[j]))
                demo.diffs_decreasing = false;
        }
    }
    return demo;
}

std::string demo_csv(const DemoResult& demo) {
    std::ostringstream os;
    os << "eps,k,lambda,diff_to_limit,disc_error\n";
    os.precision(12);
    for (const auto& row : demo.rows) {
        for (size_t j = 0; j < row.values.size(); ++j) {
            os << row.eps << "," << j << "," << row.values[j] << ",";
            if (!row.diffs.empty()) os << row.diffs[j];
            os << "," << row.disc_error[j] << "\n";
        }
    }
    return os.str();
}

}  // namespace conic
