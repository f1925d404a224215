#include "schoenberg/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace schoenberg {

namespace {

// Octaves covered by the omega_2 step ladder below 1/2.
constexpr int kLadderOctaves = 20;
// The h-ladder density is quoted per factor 512 = 2^9.
constexpr int kOctavesPerQuote = 9;

void check_t(double t) {
    if (!(t > 0.0 && t <= 0.5)) {
        throw std::domain_error("t = " + std::to_string(t) + " outside (0, 1/2]");
    }
}

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

// Uniform grid on [lo, hi] with the maximizer refined by golden section.
double refined_grid_max(const RealFunction& g, double lo, double hi, int points, bool refine) {
    if (hi <= lo) {
        return g(lo);
    }
    const double dx = (hi - lo) / static_cast<double>(points - 1);
    double best = -1.0;
    int best_i = 0;
    for (int i = 0; i < points; ++i) {
        const double x = i + 1 == points ? hi : lo + dx * i;
        const double v = g(x);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    if (!refine) {
        return best;
    }
    const double a = std::max(lo, lo + dx * (best_i - 1));
    const double b = std::min(hi, lo + dx * (best_i + 1));
    return std::max(best, golden_section_max(g, a, b));
}

}  // namespace

void GridSpec::validate() const {
    if (x_points < 2) {
        throw std::invalid_argument("grid x_points must be >= 2, got " + std::to_string(x_points));
    }
    if (h_points < 2) {
        throw std::invalid_argument("grid h_points must be >= 2, got " + std::to_string(h_points));
    }
}

double golden_section_max(const RealFunction& g, double lo, double hi, int iterations) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double best = std::max(g(lo), g(hi));
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double gc = g(c);
    double gd = g(d);
    for (int i = 0; i < iterations && b - a > 0.0; ++i) {
        best = std::max({best, gc, gd});
        if (gc >= gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
    }
    return std::max({best, gc, gd});
}

double sup_norm(const RealFunction& g, const GridSpec& grid) {
    grid.validate();
    return refined_grid_max([&g](double x) { return std::abs(g(x)); }, 0.0, 1.0, grid.x_points,
                            true);
}

double sup_norm_error(const RealFunction& f, const SplineFunction& s, const GridSpec& grid) {
    grid.validate();
    return refined_grid_max([&](double x) { return std::abs(f(x) - s(x)); }, 0.0, 1.0,
                            grid.x_points, true);
}

double sup_norm_error_unrefined(const RealFunction& f, const SplineFunction& s,
                                const GridSpec& grid) {
    grid.validate();
    return refined_grid_max([&](double x) { return std::abs(f(x) - s(x)); }, 0.0, 1.0,
                            grid.x_points, false);
}

double spline_sup_norm(const SplineFunction& s) { return spline_sup_norm(s, 0.0, 1.0); }

double spline_sup_norm(const SplineFunction& s, double lo, double hi) {
    if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) {
        throw std::domain_error("invalid sup-norm window");
    }
    const UniformMesh& mesh = s.mesh();
    double best = 0.0;
    for (int i = 0; i < mesh.segments(); ++i) {
        const double a = std::max(lo, mesh.knot(i));
        const double b = std::min(hi, mesh.knot(i + 1));
        if (a > b) {
            continue;
        }
        const double step = (b - a) / kSamplesPerInterval;
        double local = -1.0;
        double arg = a;
        for (int q = 0; q <= kSamplesPerInterval; ++q) {
            const double x = q == kSamplesPerInterval ? b : a + step * q;
            const double v = std::abs(s(x));
            if (v > local) {
                local = v;
                arg = x;
            }
        }
        // A polynomial piece is smooth, so one bracket around the best sample suffices.
        const double refined = golden_section_max([&s](double x) { return std::abs(s(x)); },
                                                  std::max(a, arg - step), std::min(b, arg + step));
        best = std::max({best, local, refined});
    }
    return best;
}

std::vector<double> omega2_steps(const GridSpec& grid) {
    grid.validate();
    const int per_octave = std::max(1, (grid.h_points - 1 + kOctavesPerQuote - 1) / kOctavesPerQuote);
    std::vector<double> steps;
    steps.reserve(static_cast<std::size_t>(per_octave * kLadderOctaves + 1));
    for (int i = 0; i <= per_octave * kLadderOctaves; ++i) {
        steps.push_back(std::exp2(-1.0 - static_cast<double>(i) / per_octave));
    }
    return steps;
}

double second_difference_sup(const RealFunction& f, double h, const GridSpec& grid) {
    grid.validate();
    if (!(h > 0.0 && h <= 0.5)) {
        throw std::domain_error("second-difference step outside (0, 1/2]");
    }
    const auto diff = [&f, h](double x) {
        return std::abs(f(clamp_unit(x)) - 2.0 * f(clamp_unit(x + h)) + f(clamp_unit(x + 2.0 * h)));
    };
    const double end = 1.0 - 2.0 * h;
    // About the density of the full x-grid, spread over [0, 1 - 2h].
    const int points =
        std::max(2, static_cast<int>(std::ceil(end * (grid.x_points - 1))) + 1);
    return refined_grid_max(diff, 0.0, end, points, true);
}

Omega2Profile::Omega2Profile(const RealFunction& f, const GridSpec& grid)
    : steps_(omega2_steps(grid)) {
    maxima_.reserve(steps_.size());
    for (const double h : steps_) {
        maxima_.push_back(second_difference_sup(f, h, grid));
    }
}

double Omega2Profile::at(double t) const {
    check_t(t);
    double best = 0.0;
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        if (steps_[i] <= t) {
            best = std::max(best, maxima_[i]);
        }
    }
    return best;
}

double omega2(const RealFunction& f, double t, const GridSpec& grid) {
    check_t(t);
    double best = 0.0;
    for (const double h : omega2_steps(grid)) {
        if (h <= t) {
            best = std::max(best, second_difference_sup(f, h, grid));
        }
    }
    return best;
}

double kfunctional_rhs(const RealFunction& f, const UniformMesh& mesh, double t,
                       const GridSpec& grid) {
    if (mesh.degree() < 3) {
        throw std::domain_error("K-functional bound needs k >= 3, got " +
                                std::to_string(mesh.degree()));
    }
    check_t(t);
    const SplineFunction s = schoenberg(mesh, f);
    return 4.0 * sup_norm_error(f, s, grid) + t * t * spline_sup_norm(second_derivative(s));
}

}  // namespace schoenberg
