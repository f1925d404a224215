#pragma once

// Discretized sup norms, the second-order modulus of smoothness and the
// K-functional right-hand side 4 ||f - S f|| + t^2 ||D^2 S f||.
//
// Every supremum here is a maximum over finitely many sample points, so each
// returned value is a lower bound of the exact quantity.

#include <vector>

#include "schoenberg/basis.hpp"
#include "schoenberg/spline_operator.hpp"

namespace schoenberg {

struct GridSpec {
    /// Uniform samples on [0, 1] for sup norms and for the x-supremum of omega_2.
    int x_points = 4097;
    /// Step lengths per factor 512 of the geometric h-ladder used by omega_2.
    int h_points = 512;

    void validate() const;
};

/// Samples per knot interval when taking sup norms of splines.
inline constexpr int kSamplesPerInterval = 32;

/// Maximize `g` on the closed interval [lo, hi] by golden-section search,
/// returning the best value seen (endpoints included).
double golden_section_max(const RealFunction& g, double lo, double hi, int iterations = 60);

/// max |g(x)| over a uniform grid on [0, 1], refined once near the maximizer.
double sup_norm(const RealFunction& g, const GridSpec& grid);

/// max |f(x) - s(x)| over the grid, refined once near the maximizer.
double sup_norm_error(const RealFunction& f, const SplineFunction& s, const GridSpec& grid);

/// Same as sup_norm_error but without the refinement pass.
double sup_norm_error_unrefined(const RealFunction& f, const SplineFunction& s,
                                const GridSpec& grid);

/// max |s(x)| sampled at kSamplesPerInterval points per knot interval,
/// interval endpoints included. Optionally restricted to [lo, hi].
double spline_sup_norm(const SplineFunction& s);
double spline_sup_norm(const SplineFunction& s, double lo, double hi);

/// Second differences of f for a fixed ladder of step lengths.
///
/// Steps are 2^{-1 - i/s} with s points per octave down to a fixed floor, the
/// same for every t. omega_2(f, t) is the max over all ladder steps h <= t, so
/// it is nondecreasing in t exactly. Dyadic t (including mesh gauges 2^-p)
/// are ladder points.
class Omega2Profile {
public:
    Omega2Profile(const RealFunction& f, const GridSpec& grid);

    /// Discrete omega_2(f, t), 0 < t <= 1/2.
    [[nodiscard]] double at(double t) const;

    [[nodiscard]] const std::vector<double>& steps() const noexcept { return steps_; }
    /// Largest |f(x) - 2 f(x+h) + f(x+2h)| found for steps()[i].
    [[nodiscard]] const std::vector<double>& maxima() const noexcept { return maxima_; }

private:
    std::vector<double> steps_;   // decreasing
    std::vector<double> maxima_;
};

/// Geometric step ladder shared by every Omega2Profile built from `grid`.
std::vector<double> omega2_steps(const GridSpec& grid);

/// sup over x in [0, 1 - 2h] of |f(x) - 2 f(x+h) + f(x+2h)| on the grid,
/// refined near the maximizer.
double second_difference_sup(const RealFunction& f, double h, const GridSpec& grid);

/// omega_2(f, t) for 0 < t <= 1/2.
double omega2(const RealFunction& f, double t, const GridSpec& grid);

/// 4 ||f - S f|| + t^2 ||D^2 S f||, k >= 3.
double kfunctional_rhs(const RealFunction& f, const UniformMesh& mesh, double t,
                       const GridSpec& grid);

}  // namespace schoenberg
