// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "schoenberg/basis.hpp"
#include "schoenberg/bounds.hpp"
#include "schoenberg/corpus.hpp"
#include "schoenberg/modulus.hpp"
#include "schoenberg/spline_operator.hpp"
#include "schoenberg/sweep.hpp"

using namespace schoenberg;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2d %-28s %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", id, name,
                out.detail.c_str(), secs);
    std::fflush(stdout);
    if (!out.pass) {
        ++failures;
    }
}

std::string fmt_max(const char* what, double value, double tol) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s = %.3e (tol %.0e)", what, value, tol);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double binomial(int n, int r) {
    double b = 1.0;
    for (int i = 1; i <= r; ++i) {
        b = b * (n - r + i) / i;
    }
    return b;
}

// Degree-k Bernstein operator, straight from the binomial formula.
double bernstein(const RealFunction& f, int k, double x) {
    double sum = 0.0;
    for (int i = 0; i <= k; ++i) {
        sum += f(static_cast<double>(i) / k) * binomial(k, i) * std::pow(x, i) *
               std::pow(1.0 - x, k - i);
    }
    return sum;
}

const GridSpec kGrid{};

}  // namespace

int main() {
    std::printf("Schoenberg operator acceptance suite\n");

    criterion(1, "partition of unity", [] {
        const auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (int n = 4; n <= 64; ++n) {
            for (int k = 1; k <= 8; ++k) {
                const UniformMesh mesh(n, k);
                for (int p = 0; p < 200; ++p) {
                    const double x = p / 199.0;
                    double sum = 0.0;
                    for (int j = -k; j < n; ++j) {
                        sum += bspline_value(mesh, k, j, x);
                    }
                    worst = std::max(worst, std::abs(sum - 1.0));
                }
            }
        }
        const double secs = seconds_since(t0);
        return Outcome{worst < 1e-12 && secs < 10.0,
                       fmt_max("max dev", worst, 1e-12) + ", runtime limit 10 s"};
    });

    criterion(2, "linear reproduction", [] {
        double worst = 0.0;
        const std::vector<std::pair<double, double>> lines{
            {1.0, 0.0}, {-10.0, 10.0}, {10.0, -10.0}, {3.5, -2.25}, {0.0, 7.0}};
        for (int n = 4; n <= 64; ++n) {
            for (int k = 1; k <= 8; ++k) {
                const UniformMesh mesh(n, k);
                for (const auto& [a, b] : lines) {
                    const RealFunction line = [a = a, b = b](double x) { return a * x + b; };
                    const SplineFunction s = schoenberg::schoenberg(mesh, line);
                    for (int p = 0; p < 200; ++p) {
                        const double x = p / 199.0;
                        worst = std::max(worst, std::abs(s(x) - line(x)));
                    }
                }
            }
        }
        return Outcome{worst < 1e-12, fmt_max("max |S l - l|", worst, 1e-12)};
    });

    criterion(3, "shift invariance", [] {
        double worst = 0.0;
        for (int k = 1; k <= 8; ++k) {
            for (int n = k + 2; n <= 64; ++n) {
                const UniformMesh mesh(n, k);
                const GrevilleNodes xi = greville_nodes(mesh, k);
                for (int j = 0; j <= n - k - 2; ++j) {
                    for (int i = 0; i <= n - k; ++i) {
                        worst = std::max(worst, std::abs(bspline_value(mesh, k, j + 1, xi[i]) -
                                                         bspline_value(mesh, k, j, xi[i - 1])));
                    }
                }
            }
        }
        return Outcome{worst <= 1e-13, fmt_max("max |N_{j+1}(xi_i) - N_j(xi_{i-1})|", worst, 1e-13)};
    });

    criterion(4, "Bernstein degeneration", [] {
        double worst = 0.0;
        for (int k = 1; k <= 8; ++k) {
            const UniformMesh mesh(1, k);
            for (const auto& f : builtin_corpus()) {
                const SplineFunction s = schoenberg::schoenberg(mesh, f.evaluator);
                for (int p = 0; p <= 100; ++p) {
                    const double x = p / 100.0;
                    worst = std::max(worst, std::abs(s(x) - bernstein(f.evaluator, k, x)));
                }
            }
        }
        return Outcome{worst < 1e-12, fmt_max("max |S_{1,k} f - B_k f|", worst, 1e-12)};
    });

    criterion(5, "iterate oracle equivalence", [] {
        double worst = 0.0;
        for (int n = 1; n <= 16; ++n) {
            for (int k = 1; k <= 4; ++k) {
                const UniformMesh mesh(n, k);
                const CollocationMatrix a = collocation_matrix(mesh);
                for (const auto& f : builtin_corpus()) {
                    // Naive nested application: S(S(...S f)).
                    RealFunction current = f.evaluator;
                    std::vector<SplineFunction> chain;
                    for (int m = 1; m <= 5; ++m) {
                        chain.push_back(schoenberg::schoenberg(mesh, current));
                        const SplineFunction* latest = &chain.back();
                        current = [s = *latest](double x) { return s(x); };
                        const SplineFunction fast = iterate(a, f.evaluator, m);
                        for (int p = 0; p <= 50; ++p) {
                            const double x = p / 50.0;
                            worst = std::max(worst, std::abs(fast(x) - chain.back()(x)));
                        }
                    }
                }
            }
        }
        return Outcome{worst < 1e-10, fmt_max("max |S^m f (matrix) - S^m f (nested)|", worst, 1e-10)};
    });

    criterion(6, "derivative formulas", [] {
        constexpr double kStep = 1e-6;
        double worst = 0.0;
        for (int k = 3; k <= 5; ++k) {
            for (const int n : {8, 16, 32}) {
                const UniformMesh mesh(n, k);
                for (const auto& f : builtin_corpus()) {
                    const SplineFunction s = schoenberg::schoenberg(mesh, f.evaluator);
                    const SplineFunction ds = derivative(s);
                    const SplineFunction d2s = derivative(ds);
                    for (int i = 0; i < n; ++i) {
                        for (const double theta : {0.17, 0.5, 0.83}) {
                            const double x = mesh.knot(i) + theta * mesh.gauge();
                            const double fd1 = (s(x + kStep) - s(x - kStep)) / (2 * kStep);
                            const double fd2 = (ds(x + kStep) - ds(x - kStep)) / (2 * kStep);
                            worst = std::max({worst, std::abs(ds(x) - fd1), std::abs(d2s(x) - fd2)});
                        }
                    }
                }
            }
        }
        return Outcome{worst < 1e-5, fmt_max("max |D s - central FD|", worst, 1e-5)};
    });

    criterion(7, "iterate D^2 bound", [] {
        const auto t0 = std::chrono::steady_clock::now();
        double worst_excess = -1e300;
        int violations = 0;
        for (const int k : {3, 4}) {
            for (const int n : {32, 64}) {
                const UniformMesh mesh(n, k);
                const CollocationMatrix a = collocation_matrix(mesh);
                const double lo = mesh.knot(2 * k + 2);
                const double hi = mesh.knot(n - 2 * k - 2);
                for (const auto& f : builtin_corpus()) {
                    const double f_norm = sup_norm(f.evaluator, kGrid);
                    for (int m = 2; m <= 10; ++m) {
                        const double lhs = spline_sup_norm(second_derivative(iterate(a, f.evaluator, m)), lo, hi);
                        const double rhs = iterate_d2_bound(mesh, m) * f_norm + kCheckSlack;
                        worst_excess = std::max(worst_excess, lhs - rhs);
                        if (lhs > rhs) {
                            ++violations;
                        }
                    }
                }
            }
        }
        const double secs = seconds_since(t0);
        char buf[160];
        std::snprintf(buf, sizeof buf, "violations = %d, max(lhs - rhs) = %.3e, runtime limit 60 s",
                      violations, worst_excess);
        return Outcome{violations == 0 && secs < 60.0, buf};
    });

    criterion(8, "K-functional inequality", [] {
        int violations = 0;
        double worst_excess = -1e300;
        for (const auto& f : builtin_corpus()) {
            const Omega2Profile profile(f.evaluator, kGrid);
            for (const int k : {3, 4, 5}) {
                for (const int n : {16, 32, 64}) {
                    const UniformMesh mesh(n, k);
                    for (const double t : {mesh.gauge(), 2 * mesh.gauge(), 0.25}) {
                        const double lhs = profile.at(t);
                        const double rhs = kfunctional_rhs(f.evaluator, mesh, t, kGrid) + kCheckSlack;
                        worst_excess = std::max(worst_excess, lhs - rhs);
                        if (lhs > rhs) {
                            ++violations;
                        }
                    }
                }
            }
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, "violations = %d, max(lhs - rhs) = %.3e", violations,
                      worst_excess);
        return Outcome{violations == 0, buf};
    });

    // Criteria 9 and 10 share the default sweep.
    SweepTable sweep;
    criterion(9, "uniform estimate, constant 5", [&sweep] {
        SweepConfig config;  // n {32,64,128}, k {3,4,5}, t {h, 2h, 1/4, delta}
        sweep = run_sweep(config);
        int checked = 0;
        int violations = 0;
        double worst_ratio = 0.0;
        for (const auto& [fn, r] : sweep.rows) {
            if (r.omega2_at_delta <= 0.0) {
                continue;
            }
            ++checked;
            // Independent recomputation of delta and the inequality.
            const double c = 4.0 * r.d_k + 2.0 * r.epsilon_nk * zeta_three_halves();
            const double expect_delta = (1.0 / r.n) / std::sqrt(c);
            const bool ok = std::abs(expect_delta - r.delta) <= 1e-15 &&
                            r.omega2_at_delta <= 5.0 * r.error_norm + kCheckSlack && r.five_check;
            if (!ok) {
                ++violations;
            }
            worst_ratio = std::max(worst_ratio, r.omega2_at_delta / r.error_norm);
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, "rows = %d, violations = %d, max omega2(delta)/err = %.4f",
                      checked, violations, worst_ratio);
        return Outcome{violations == 0 && checked > 0, buf};
    });

    criterion(10, "two-sided equivalence", [&sweep] {
        int violations = 0;
        for (const auto& [fn, r] : sweep.rows) {
            const double m1 = 1.0 / r.lower_const;
            const double m2 = beutel_upper_constant(UniformMesh(r.n, r.k), r.t);
            const bool ok = m1 * r.omega2_t <= r.error_norm + kCheckSlack &&
                            r.error_norm <= m2 * r.omega2_t + kCheckSlack && r.sandwich_check;
            if (!ok) {
                ++violations;
            }
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, "rows = %zu, violations = %d", sweep.rows.size(), violations);
        return Outcome{violations == 0 && !sweep.rows.empty(), buf};
    });

    criterion(11, "zeta(3/2)", [] {
        constexpr long kTerms = 1'000'000;
        double partial = 0.0;
        for (long m = kTerms; m >= 1; --m) {
            partial += std::pow(static_cast<double>(m), -1.5);
        }
        const double lo = partial + 2.0 / std::sqrt(kTerms + 1.0);
        const double hi = partial + 2.0 / std::sqrt(static_cast<double>(kTerms));
        const double z = zeta_three_halves();
        const double mid = 0.5 * (lo + hi);
        const bool ok = std::abs(z - mid) <= 1e-9 && std::abs(z - 2.612375348) <= 1e-9 &&
                        z >= lo - 1e-12 && z <= hi + 1e-12;
        char buf[160];
        std::snprintf(buf, sizeof buf, "zeta = %.12f, oracle bracket [%.12f, %.12f]", z, lo, hi);
        return Outcome{ok, buf};
    });

    criterion(12, "epsilon stabilization", [] {
        double worst = 0.0;
        for (const int k : {3, 4, 5}) {
            const int base = 4 * k + 8;
            const double e0 = epsilon_nk(UniformMesh(base, k));
            for (const int n : {2 * base, 4 * base}) {
                worst = std::max(worst, std::abs(epsilon_nk(UniformMesh(n, k)) - e0));
            }
        }
        return Outcome{worst <= 1e-12, fmt_max("max |eps(n) - eps(4k+8)|", worst, 1e-12)};
    });

    criterion(13, "harness determinism", [] {
        SweepConfig config;
        config.n_list = {32, 40};
        config.k_list = {3};
        config.function_names = {"abs_half", "sqrt_third", "linear"};
        config.dk_strategy = DkStrategy::grid_lp;
        config.seed = 7;
        const std::string first = to_csv(run_sweep(config));
        const std::string second = to_csv(run_sweep(config));
        const std::string json_a = to_json(run_sweep(config));
        const std::string json_b = to_json(run_sweep(config));
        const int good = exit_code(run_sweep(config));

        SweepConfig broken = config;
        broken.five_constant = 0.01;  // deliberately violated
        const int bad = exit_code(run_sweep(broken));
        char buf[128];
        std::snprintf(buf, sizeof buf, "csv identical = %d, json identical = %d, exit codes %d/%d",
                      first == second, json_a == json_b, good, bad);
        return Outcome{first == second && json_a == json_b && good == 0 && bad == 1, buf};
    });

    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "OK" : "FAILED", failures);
    return failures == 0 ? 0 : 1;
}
