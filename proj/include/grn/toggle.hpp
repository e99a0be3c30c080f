#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "grn/hill.hpp"
#include "grn/parameters.hpp"

namespace grn {

/// d/dx of hill_repression(x, K, n). Zero in the saturated limits.
inline double hill_repression_derivative(double x, double K, double n) {
    if (x <= 0.0) return n == 1.0 ? -1.0 / K : 0.0;
    double t = detail::hill_ratio(x, K, n);
    if (std::isinf(t)) return 0.0;
    return -n * t / (x * (1.0 + t) * (1.0 + t));
}

enum class Stability { StableNode, Saddle, Unstable };

inline std::string_view stability_name(Stability s) {
    switch (s) {
    case Stability::StableNode: return "StableNode";
    case Stability::Saddle: return "Saddle";
    case Stability::Unstable: return "Unstable";
    }
    return "?";
}

struct FixedPoint {
    double rep1 = 0.0;  // nM
    double rep2 = 0.0;  // nM
    Stability stability = Stability::StableNode;
    std::array<std::complex<double>, 2> eigenvalues{};
};

/// The isolated mutual-repression core: rep1 and rep2 with sequestration and
/// the hybrid activator arm switched off. Curve 1 is the rep2 nullcline
/// (rep2 as a function of rep1), curve 2 the rep1 nullcline (rep1 as a
/// function of rep2).
inline double toggle_curve1(const NeuronParameters& p, double rep1) {
    return p.k_prodC / p.k_deg_rep2 * hill_repression(rep1, p.K_rep1, p.n_rep1);
}

inline double toggle_curve2(const NeuronParameters& p, double rep2) {
    return p.k_prodE / p.k_deg_rep1 * hill_repression(rep2, p.K_rep2, p.n_rep2);
}

struct NullclineCurves {
    std::vector<double> rep1_axis;   // sample points for curve 1
    std::vector<double> curve1_rep2; // rep2 where d[rep2]/dt = 0
    std::vector<double> rep2_axis;   // sample points for curve 2
    std::vector<double> curve2_rep1; // rep1 where d[rep1]/dt = 0
};

inline NullclineCurves toggle_nullclines(const NeuronParameters& p, std::size_t n_points = 256) {
    validate_parameters(p);
    NullclineCurves c;
    double rep1_max = 1.05 * p.k_prodE / p.k_deg_rep1;
    double rep2_max = 1.05 * p.k_prodC / p.k_deg_rep2;
    for (std::size_t i = 0; i < n_points; ++i) {
        double s = static_cast<double>(i) / static_cast<double>(n_points - 1);
        c.rep1_axis.push_back(s * rep1_max);
        c.curve1_rep2.push_back(toggle_curve1(p, s * rep1_max));
        c.rep2_axis.push_back(s * rep2_max);
        c.curve2_rep1.push_back(toggle_curve2(p, s * rep2_max));
    }
    return c;
}

namespace detail {

/// Residual of curve 2 composed with curve 1, as a function of rep1 alone.
/// Roots are the nullcline intersections.
inline double toggle_gap(const NeuronParameters& p, double rep1) {
    return toggle_curve2(p, toggle_curve1(p, rep1)) - rep1;
}

} // namespace detail

inline FixedPoint classify_toggle_point(const NeuronParameters& p, double rep1, double rep2) {
    // Jacobian of the isolated core in (rep1, rep2) order.
    double a = -p.k_deg_rep1;
    double b = p.k_prodE * hill_repression_derivative(rep2, p.K_rep2, p.n_rep2);
    double c = p.k_prodC * hill_repression_derivative(rep1, p.K_rep1, p.n_rep1);
    double d = -p.k_deg_rep2;
    double tr = a + d, det = a * d - b * c;
    double disc = tr * tr - 4.0 * det;

    FixedPoint fp;
    fp.rep1 = rep1;
    fp.rep2 = rep2;
    if (disc >= 0.0) {
        double s = std::sqrt(disc);
        fp.eigenvalues = {std::complex<double>((tr + s) / 2.0, 0.0),
                          std::complex<double>((tr - s) / 2.0, 0.0)};
    } else {
        double s = std::sqrt(-disc);
        fp.eigenvalues = {std::complex<double>(tr / 2.0, s / 2.0),
                          std::complex<double>(tr / 2.0, -s / 2.0)};
    }
    if (det < 0.0)
        fp.stability = Stability::Saddle;
    else if (std::max(fp.eigenvalues[0].real(), fp.eigenvalues[1].real()) < 0.0)
        fp.stability = Stability::StableNode;
    else
        fp.stability = Stability::Unstable;
    return fp;
}

/// All intersections of the two nullclines, found by sign-change bracketing
/// of the scalar composition on a grid over [0, 1.05 k_prodE/k_deg_rep1]
/// that is dense both logarithmically (sharp Hill walls sit orders of
/// magnitude apart) and linearly, each bracket refined by bisection to
/// 1e-10 nM. Zero or one intersection is a legitimate monostable outcome.
inline std::vector<FixedPoint> toggle_fixed_points(const NeuronParameters& p) {
    validate_parameters(p);
    const double rep1_max = 1.05 * p.k_prodE / p.k_deg_rep1;

    std::vector<double> grid;
    grid.push_back(0.0);
    constexpr int kLogPoints = 2000, kLinPoints = 2000;
    for (int i = 0; i <= kLogPoints; ++i)
        grid.push_back(rep1_max * std::pow(10.0, -12.0 + 12.0 * i / kLogPoints));
    for (int i = 1; i <= kLinPoints; ++i)
        grid.push_back(rep1_max * i / kLinPoints);
    std::sort(grid.begin(), grid.end());

    std::vector<FixedPoint> points;
    double g_prev = detail::toggle_gap(p, grid.front());
    for (std::size_t i = 1; i < grid.size(); ++i) {
        double g_here = detail::toggle_gap(p, grid[i]);
        bool bracketed = (g_prev > 0.0 && g_here < 0.0) || (g_prev < 0.0 && g_here > 0.0);
        bool exact = g_here == 0.0;
        if (bracketed) {
            double lo = grid[i - 1], hi = grid[i], g_lo = g_prev;
            while (hi - lo > 1e-10) {
                double mid = 0.5 * (lo + hi);
                double g_mid = detail::toggle_gap(p, mid);
                if (g_mid == 0.0) { lo = hi = mid; break; }
                if ((g_lo > 0.0) == (g_mid > 0.0)) { lo = mid; g_lo = g_mid; }
                else hi = mid;
            }
            double r1 = 0.5 * (lo + hi);
            points.push_back(classify_toggle_point(p, r1, toggle_curve1(p, r1)));
        } else if (exact) {
            points.push_back(classify_toggle_point(p, grid[i], toggle_curve1(p, grid[i])));
        }
        g_prev = g_here;
    }
    if (detail::toggle_gap(p, 0.0) == 0.0)
        points.insert(points.begin(), classify_toggle_point(p, 0.0, toggle_curve1(p, 0.0)));

    // Coincident brackets (grid point landing on a root) collapse to one.
    std::sort(points.begin(), points.end(),
              [](const FixedPoint& a, const FixedPoint& b) { return a.rep1 < b.rep1; });
    std::vector<FixedPoint> unique;
    for (const auto& fp : points)
        if (unique.empty() || fp.rep1 - unique.back().rep1 > 1e-8) unique.push_back(fp);
    return unique;
}

} // namespace grn
