#pragma once

// Constants of the lower estimate for the uniform Schoenberg operator and the
// checks that tie them to measured approximation errors.
//
//   epsilon_{n,k}  interior decay constant of the second differences of the
//                  collocation rows
//   d_k            stability constant of the B-spline basis,
//                  ||c|| <= d_k ||sum c_j N_{j,k}||
//   lower const    4 + t^2 (4 d_k + 2 epsilon zeta(3/2)) / h^2
//   delta          h / sqrt(4 d_k + 2 epsilon zeta(3/2)), where the lower
//                  constant equals 5
//   upper const    1 + min{1/(2k), (k+1) h^2 / 12} / (2 t^2)

#include <cstdint>
#include <string>
#include <string_view>

#include "schoenberg/basis.hpp"
#include "schoenberg/modulus.hpp"
#include "schoenberg/spline_operator.hpp"

namespace schoenberg {

/// Additive slack carried by every inequality check.
inline constexpr double kCheckSlack = 1e-9;

/// Guard below which a basis value counts as zero in epsilon_{n,k}.
inline constexpr double kEpsilonGuard = 1e-14;

enum class DkStrategy { alternating, grid_lp };

std::string_view to_string(DkStrategy strategy);
/// Accepts "alternating" and "grid_lp"; throws std::invalid_argument otherwise.
DkStrategy parse_dk_strategy(std::string_view name);

/// Smallest n for which epsilon_{n,k} is defined on a mesh of degree k.
constexpr int min_epsilon_segments(int k) { return 4 * k + 8; }

/// Greville indices i whose stencil {i-2, i-1, i} lies in [x_{2k+2}, x_{n-2k-2}].
struct IndexRange {
    int first = 0;
    int last = -1;
    [[nodiscard]] bool empty() const noexcept { return last < first; }
};
IndexRange epsilon_row_range(const UniformMesh& mesh);

/// epsilon_{n,k}: square root of
///   sup_i sum_j (N_j(xi_i) - 2 N_j(xi_{i-1}) + N_j(xi_{i-2}))^2 / guard(N_j(xi_i)).
/// Requires n >= 4k + 8.
double epsilon_nk(const UniformMesh& mesh);

/// Lower estimate of d_k: the best ||c|| / ||s|| over trial coefficient vectors.
/// `seed` drives the random patterns of grid_lp and is ignored otherwise.
double estimate_dk(const UniformMesh& mesh, DkStrategy strategy, std::uint64_t seed = 0);

/// ||c||_inf / ||sum c_j N_{j,k}||_inf with the spline norm sampled densely.
double stability_ratio(const UniformMesh& mesh, std::span<const double> c);

/// zeta(3/2) to better than 1e-9.
double zeta_three_halves();

/// 2 epsilon_{n,k} / ((m - 1)^{3/2} h^2), m >= 2.
double iterate_d2_bound(const UniformMesh& mesh, int m);

/// 4 d_k + 2 epsilon_{n,k} zeta(3/2).
double telescoping_constant(const UniformMesh& mesh, double d_k);

/// 4 + t^2 (4 d_k + 2 epsilon zeta(3/2)) / h^2. Requires k >= 3, 0 < t <= 1/2, d_k >= 1.
double lower_bound_constant(const UniformMesh& mesh, double t, double d_k);

/// h / sqrt(4 d_k + 2 epsilon zeta(3/2)). Requires d_k >= 1.
double delta(const UniformMesh& mesh, double d_k);

/// 1 + min{1/(2k), (k+1) H^2 / 12} / (2 t^2) with H = h.
double beutel_upper_constant(const UniformMesh& mesh, double t);

struct BoundReport {
    int n = 0;
    int k = 0;
    double t = 0.0;
    double delta = 0.0;
    double omega2_t = 0.0;
    double omega2_at_delta = 0.0;
    double error_norm = 0.0;
    double epsilon_nk = 0.0;
    double d_k = 0.0;
    DkStrategy dk_strategy = DkStrategy::alternating;
    double lower_const = 0.0;
    double upper_const = 0.0;
    double five_constant = 5.0;
    bool five_check = false;
    bool sandwich_check = false;
    double slack = kCheckSlack;
};

/// Measured quantities for one (f, mesh) pair from which reports are assembled.
struct MeasuredBounds {
    double omega2_t = 0.0;
    double omega2_at_delta = 0.0;
    double error_norm = 0.0;
};

/// Fill every constant and check from measured quantities.
BoundReport assemble_report(const UniformMesh& mesh, double t, double d_k, DkStrategy strategy,
                            const MeasuredBounds& measured, double five_constant = 5.0);

/// Recompute both checks from the stored fields.
bool recompute_five_check(const BoundReport& r);
bool recompute_sandwich_check(const BoundReport& r);

/// Full experiment for one (f, n, k, t); k >= 3, 0 < t <= 1/2.
BoundReport lower_bound_report(const RealFunction& f, const UniformMesh& mesh, double t,
                               const GridSpec& grid, DkStrategy strategy,
                               std::uint64_t seed = 0);

}  // namespace schoenberg
