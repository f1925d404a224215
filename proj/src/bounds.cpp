#include "schoenberg/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace schoenberg {

namespace {

void require_k3(const UniformMesh& mesh) {
    if (mesh.degree() < 3) {
        throw std::domain_error("lower estimate needs k >= 3, got " +
                                std::to_string(mesh.degree()));
    }
}

void require_t(double t) {
    if (!(t > 0.0 && t <= 0.5)) {
        throw std::domain_error("t = " + std::to_string(t) + " outside (0, 1/2]");
    }
}

void require_dk(double d_k) {
    if (!(d_k >= 1.0)) {
        throw std::domain_error("d_k estimate must be >= 1, got " + std::to_string(d_k));
    }
}

// Basis values of degree k at kSamplesPerInterval + 1 points per knot interval,
// stored per basis function so a coefficient change touches only its support.
class SampledBasis {
public:
    explicit SampledBasis(const UniformMesh& mesh) : dim_(mesh.segments() + mesh.degree()) {
        const int k = mesh.degree();
        by_coefficient_.resize(static_cast<std::size_t>(dim_));
        for (int i = 0; i < mesh.segments(); ++i) {
            const double a = mesh.knot(i);
            const double b = mesh.knot(i + 1);
            for (int q = 0; q <= kSamplesPerInterval; ++q) {
                const double x =
                    q == kSamplesPerInterval ? b : a + (b - a) * q / double(kSamplesPerInterval);
                const BasisSpan span = basis_span(mesh, k, x);
                const int sample = static_cast<int>(xs_.size());
                xs_.push_back(x);
                for (int r = 0; r <= k; ++r) {
                    const double v = span.values[static_cast<std::size_t>(r)];
                    if (v != 0.0) {
                        by_coefficient_[static_cast<std::size_t>(span.first + r + k)].push_back(
                            {sample, v});
                    }
                }
            }
        }
    }

    [[nodiscard]] int dimension() const noexcept { return dim_; }
    [[nodiscard]] std::size_t samples() const noexcept { return xs_.size(); }
    [[nodiscard]] double sample_point(std::size_t q) const { return xs_[q]; }

    [[nodiscard]] std::vector<double> evaluate(std::span<const double> c) const {
        std::vector<double> vals(xs_.size(), 0.0);
        for (std::size_t j = 0; j < c.size(); ++j) {
            add(vals, static_cast<int>(j), c[j]);
        }
        return vals;
    }

    void add(std::vector<double>& vals, int j, double delta) const {
        if (delta == 0.0) {
            return;
        }
        for (const auto& [q, v] : by_coefficient_[static_cast<std::size_t>(j)]) {
            vals[static_cast<std::size_t>(q)] += delta * v;
        }
    }

private:
    struct Entry {
        int sample;
        double value;
    };
    int dim_;
    std::vector<double> xs_;
    std::vector<std::vector<Entry>> by_coefficient_;
};

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (const double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double sampled_ratio(std::span<const double> c, std::span<const double> vals) {
    const double norm_s = max_abs(vals);
    return norm_s > 0.0 ? max_abs(c) / norm_s : 0.0;
}

std::vector<std::vector<double>> alternating_candidates(const UniformMesh& mesh) {
    const int k = mesh.degree();
    const int dim = mesh.segments() + k;
    std::vector<std::vector<double>> out;
    for (int j = 0; j < dim; ++j) {
        std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
        e[static_cast<std::size_t>(j)] = 1.0;
        out.push_back(std::move(e));
    }
    // (-1)^j with p zero coefficients at each end.
    for (int pad = 0; pad <= k + 1 && 2 * pad < dim; ++pad) {
        std::vector<double> c(static_cast<std::size_t>(dim), 0.0);
        for (int j = pad; j < dim - pad; ++j) {
            c[static_cast<std::size_t>(j)] = (j % 2 == 0) ? 1.0 : -1.0;
        }
        out.push_back(std::move(c));
    }
    // Centered alternating windows.
    for (int w = 2; w <= std::min(dim, 2 * k + 4); ++w) {
        std::vector<double> c(static_cast<std::size_t>(dim), 0.0);
        const int start = (dim - w) / 2;
        for (int j = start; j < start + w; ++j) {
            c[static_cast<std::size_t>(j)] = (j % 2 == 0) ? 1.0 : -1.0;
        }
        out.push_back(std::move(c));
    }
    return out;
}

// Greedy coordinate search over c_j in {-1, -1/2, 0, 1/2, 1}.
std::vector<double> local_search(const SampledBasis& basis, std::vector<double> c,
                                 std::mt19937_64& rng, int iterations) {
    static constexpr std::array<double, 5> kLevels{-1.0, -0.5, 0.0, 0.5, 1.0};
    std::vector<double> vals = basis.evaluate(c);
    double best = sampled_ratio(c, vals);
    std::uniform_int_distribution<int> pick_index(0, basis.dimension() - 1);
    std::uniform_int_distribution<int> pick_level(0, static_cast<int>(kLevels.size()) - 1);
    for (int it = 0; it < iterations; ++it) {
        const int j = pick_index(rng);
        const double old = c[static_cast<std::size_t>(j)];
        const double proposal = it % 2 == 0 ? -old : kLevels[static_cast<std::size_t>(pick_level(rng))];
        if (proposal == old) {
            continue;
        }
        c[static_cast<std::size_t>(j)] = proposal;
        basis.add(vals, j, proposal - old);
        const double ratio = sampled_ratio(c, vals);
        if (ratio > best) {
            best = ratio;
        } else {
            c[static_cast<std::size_t>(j)] = old;
            basis.add(vals, j, old - proposal);
        }
    }
    return c;
}

}  // namespace

std::string_view to_string(DkStrategy strategy) {
    switch (strategy) {
        case DkStrategy::alternating:
            return "alternating";
        case DkStrategy::grid_lp:
            return "grid_lp";
    }
    return "alternating";
}

DkStrategy parse_dk_strategy(std::string_view name) {
    if (name == "alternating") {
        return DkStrategy::alternating;
    }
    if (name == "grid_lp") {
        return DkStrategy::grid_lp;
    }
    throw std::invalid_argument("unknown d_k strategy '" + std::string(name) +
                                "' (expected alternating or grid_lp)");
}

IndexRange epsilon_row_range(const UniformMesh& mesh) {
    const int n = mesh.segments();
    const int k = mesh.degree();
    // For 0 <= i <= n - k, xi_{i,k} = (i + (k+1)/2) h. Doubled to stay integral:
    //   xi_{i-2,k} >= x_{2k+2}   <=>  2i >= 3k + 7
    //   xi_{i,k}   <= x_{n-2k-2} <=>  2i <= 2n - 5k - 5
    IndexRange r;
    r.first = (3 * k + 7 + 1) / 2;
    r.last = (2 * n - 5 * k - 5) / 2;
    if (2 * n - 5 * k - 5 < 0) {
        r.last = -1;
    }
    return r;
}

double epsilon_nk(const UniformMesh& mesh) {
    const int n = mesh.segments();
    const int k = mesh.degree();
    if (n < min_epsilon_segments(k)) {
        throw std::domain_error("epsilon_{n,k} needs n >= 4k+8 = " +
                                std::to_string(min_epsilon_segments(k)) + ", got n = " +
                                std::to_string(n));
    }
    const IndexRange rows = epsilon_row_range(mesh);
    const GrevilleNodes xi = greville_nodes(mesh, k);

    double sup = 0.0;
    for (int i = rows.first; i <= rows.last; ++i) {
        const BasisSpan s0 = basis_span(mesh, k, xi[i]);
        const BasisSpan s1 = basis_span(mesh, k, xi[i - 1]);
        const BasisSpan s2 = basis_span(mesh, k, xi[i - 2]);
        const auto value = [k](const BasisSpan& s, int j) {
            const int off = j - s.first;
            return (off < 0 || off > k) ? 0.0 : s.values[static_cast<std::size_t>(off)];
        };
        const int lo = std::min({s0.first, s1.first, s2.first});
        const int hi = std::max({s0.first, s1.first, s2.first}) + k;
        double sum = 0.0;
        for (int j = lo; j <= hi; ++j) {
            const double at_i = value(s0, j);
            const double second = at_i - 2.0 * value(s1, j) + value(s2, j);
            const double guard = at_i > kEpsilonGuard ? at_i : 1.0;
            sum += second * second / guard;
        }
        sup = std::max(sup, sum);
    }
    return std::sqrt(sup);
}

double stability_ratio(const UniformMesh& mesh, std::span<const double> c) {
    const int k = mesh.degree();
    const SplineFunction s(mesh, k, std::vector<double>(c.begin(), c.end()));
    const SampledBasis basis(mesh);
    const std::vector<double> vals = basis.evaluate(c);
    std::size_t arg = 0;
    double norm_s = 0.0;
    for (std::size_t q = 0; q < vals.size(); ++q) {
        if (std::abs(vals[q]) > norm_s) {
            norm_s = std::abs(vals[q]);
            arg = q;
        }
    }
    if (norm_s == 0.0) {
        return 0.0;
    }
    const double step = mesh.gauge() / kSamplesPerInterval;
    const double lo = std::max(0.0, basis.sample_point(arg) - step);
    const double hi = std::min(1.0, basis.sample_point(arg) + step);
    norm_s = std::max(norm_s, golden_section_max([&s](double x) { return std::abs(s(x)); }, lo, hi));
    return max_abs(c) / norm_s;
}

double estimate_dk(const UniformMesh& mesh, DkStrategy strategy, std::uint64_t seed) {
    const auto candidates = alternating_candidates(mesh);
    double best = 0.0;
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double r = stability_ratio(mesh, candidates[i]);
        if (r > best) {
            best = r;
            best_index = i;
        }
    }
    if (strategy == DkStrategy::alternating) {
        return best;
    }

    const SampledBasis basis(mesh);
    std::mt19937_64 rng(seed);
    const int dim = basis.dimension();
    const int iterations = 60 * dim;
    constexpr int kRestarts = 4;

    std::vector<std::vector<double>> starts{candidates[best_index]};
    std::bernoulli_distribution coin(0.5);
    for (int r = 0; r < kRestarts; ++r) {
        std::vector<double> c(static_cast<std::size_t>(dim));
        for (auto& v : c) {
            v = coin(rng) ? 1.0 : -1.0;
        }
        starts.push_back(std::move(c));
    }
    for (const auto& start : starts) {
        const std::vector<double> c = local_search(basis, start, rng, iterations);
        best = std::max(best, stability_ratio(mesh, c));
    }
    return best;
}

double zeta_three_halves() {
    static const double value = [] {
        constexpr long kTerms = 1'000'000;
        double sum = 0.0;
        // Smallest terms first.
        for (long m = kTerms; m >= 1; --m) {
            const double dm = static_cast<double>(m);
            sum += 1.0 / (dm * std::sqrt(dm));
        }
        // Euler-Maclaurin tail sum_{m>N} m^{-3/2}; it lies between the
        // integral bounds 2/sqrt(N+1) and 2/sqrt(N) with error O(N^{-9/2}).
        const double n = static_cast<double>(kTerms);
        const double tail = 2.0 / std::sqrt(n) - 0.5 / (n * std::sqrt(n)) +
                            1.0 / (8.0 * n * n * std::sqrt(n));
        return sum + tail;
    }();
    return value;
}

double iterate_d2_bound(const UniformMesh& mesh, int m) {
    if (m < 2) {
        throw std::domain_error("iterate bound needs m >= 2, got " + std::to_string(m));
    }
    const double h = mesh.gauge();
    const double mm = static_cast<double>(m - 1);
    return 2.0 * epsilon_nk(mesh) / (mm * std::sqrt(mm) * h * h);
}

double telescoping_constant(const UniformMesh& mesh, double d_k) {
    require_dk(d_k);
    return 4.0 * d_k + 2.0 * epsilon_nk(mesh) * zeta_three_halves();
}

double lower_bound_constant(const UniformMesh& mesh, double t, double d_k) {
    require_k3(mesh);
    require_t(t);
    const double h = mesh.gauge();
    return 4.0 + t * t * telescoping_constant(mesh, d_k) / (h * h);
}

double delta(const UniformMesh& mesh, double d_k) {
    return mesh.gauge() / std::sqrt(telescoping_constant(mesh, d_k));
}

double beutel_upper_constant(const UniformMesh& mesh, double t) {
    require_t(t);
    const double k = mesh.degree();
    const double h = mesh.gauge();
    const double moment = std::min(1.0 / (2.0 * k), (k + 1.0) * h * h / 12.0);
    return 1.0 + moment / (2.0 * t * t);
}

bool recompute_five_check(const BoundReport& r) {
    return r.omega2_at_delta <= r.five_constant * r.error_norm + r.slack;
}

bool recompute_sandwich_check(const BoundReport& r) {
    const bool lower = r.omega2_t / r.lower_const <= r.error_norm + r.slack;
    const bool upper = r.error_norm <= r.upper_const * r.omega2_t + r.slack;
    return lower && upper;
}

BoundReport assemble_report(const UniformMesh& mesh, double t, double d_k, DkStrategy strategy,
                            const MeasuredBounds& measured, double five_constant) {
    require_k3(mesh);
    require_t(t);
    BoundReport r;
    r.n = mesh.segments();
    r.k = mesh.degree();
    r.t = t;
    r.delta = delta(mesh, d_k);
    r.omega2_t = measured.omega2_t;
    r.omega2_at_delta = measured.omega2_at_delta;
    r.error_norm = measured.error_norm;
    r.epsilon_nk = epsilon_nk(mesh);
    r.d_k = d_k;
    r.dk_strategy = strategy;
    r.lower_const = lower_bound_constant(mesh, t, d_k);
    r.upper_const = beutel_upper_constant(mesh, t);
    r.five_constant = five_constant;
    r.slack = kCheckSlack;
    r.five_check = recompute_five_check(r);
    r.sandwich_check = recompute_sandwich_check(r);
    return r;
}

BoundReport lower_bound_report(const RealFunction& f, const UniformMesh& mesh, double t,
                               const GridSpec& grid, DkStrategy strategy, std::uint64_t seed) {
    require_k3(mesh);
    require_t(t);
    const double d_k = estimate_dk(mesh, strategy, seed);
    MeasuredBounds measured;
    measured.error_norm = sup_norm_error(f, schoenberg(mesh, f), grid);
    measured.omega2_t = omega2(f, t, grid);
    measured.omega2_at_delta = omega2(f, delta(mesh, d_k), grid);
    return assemble_report(mesh, t, d_k, strategy, measured);
}

}  // namespace schoenberg
