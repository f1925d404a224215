// Command-line front end: basis checks, single approximations, epsilon tables,
// single bound reports and configuration-driven sweeps.
//
// Exit codes: 0 every check passed, 1 some check failed, 2 usage or config error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "schoenberg/basis.hpp"
#include "schoenberg/bounds.hpp"
#include "schoenberg/corpus.hpp"
#include "schoenberg/modulus.hpp"
#include "schoenberg/spline_operator.hpp"
#include "schoenberg/sweep.hpp"

namespace {

using namespace schoenberg;

constexpr int kUsageError = 2;

std::string num(double v) { return fmt::format("{:.17g}", v); }

int run_basis_check(int n, int k) {
    const BasisCheck c = basis_check(n, k);
    std::cout << "n," << c.n << "\nk," << c.k << '\n'
              << "partition_of_unity," << num(c.partition_of_unity) << '\n'
              << "linear_reproduction," << num(c.linear_reproduction) << '\n'
              << "shift_invariance," << num(c.shift_invariance) << '\n'
              << "collocation_row_sum," << num(c.collocation_row_sum) << '\n'
              << "oracle_agreement,"
              << (c.oracle_agreement < 0.0 ? std::string("skipped") : num(c.oracle_agreement))
              << '\n'
              << "passed," << (c.passed ? "true" : "false") << '\n';
    return c.passed ? 0 : 1;
}

int run_approx(const std::string& fn, int n, int k, const std::string& plot_csv) {
    const TestFunction& f = find_function(fn);
    const UniformMesh mesh(n, k);
    const SplineFunction s = schoenberg::schoenberg(mesh, f.evaluator);
    const double err = sup_norm_error(f.evaluator, s, GridSpec{});
    std::cout << "fn,n,k,err_norm\n" << f.name << ',' << n << ',' << k << ',' << num(err) << '\n';
    if (!plot_csv.empty()) {
        std::ofstream out(plot_csv, std::ios::binary);
        if (!out) {
            throw ConfigError("plot-csv: cannot write '" + plot_csv + "'");
        }
        out << "x,f,sf,error\n";
        constexpr int kPoints = 1001;
        for (int i = 0; i < kPoints; ++i) {
            const double x = static_cast<double>(i) / (kPoints - 1);
            const double fx = f(x);
            const double sx = s(x);
            out << num(x) << ',' << num(fx) << ',' << num(sx) << ',' << num(fx - sx) << '\n';
        }
    }
    return 0;
}

int run_epsilon(int k, const std::vector<int>& n_list) {
    std::cout << "n,k,epsilon_nk\n";
    for (const int n : n_list) {
        std::cout << n << ',' << k << ',' << num(epsilon_nk(UniformMesh(n, k))) << '\n';
    }
    return 0;
}

int run_bounds(const std::string& fn, int n, int k, const std::string& t_text,
               const std::string& strategy_name, std::uint64_t seed) {
    const TestFunction& f = find_function(fn);
    const UniformMesh mesh(n, k);
    const DkStrategy strategy = parse_dk_strategy(strategy_name);
    const TSpec t_spec = TSpec::parse(t_text);
    double t = 0.0;
    if (t_spec.kind == TSpec::Kind::auto_delta) {
        t = delta(mesh, estimate_dk(mesh, strategy, seed));
    } else {
        t = t_spec.resolve(mesh, 0.0);
    }
    SweepTable table;
    table.rows.push_back({f.name, lower_bound_report(f.evaluator, mesh, t, GridSpec{}, strategy, seed)});
    std::cout << to_csv(table);
    return exit_code(table);
}

int run_sweep_command(const std::string& config_path, const std::string& out_path) {
    const SweepConfig config = load_config(config_path);
    const SweepTable table = run_sweep(config);
    const std::string text = serialize(table, config.output_format);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            throw ConfigError("out: cannot write '" + out_path + "'");
        }
        out << text;
    }
    return exit_code(table);
}

int run_corpus_list() {
    std::cout << "name,smoothness\n";
    for (const auto& f : builtin_corpus()) {
        std::cout << f.name << ',' << to_string(f.smoothness) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uniform Schoenberg operator: approximation and lower-bound checks"};
    app.require_subcommand(1);

    int n = 0;
    int k = 0;
    std::string fn;
    std::string plot_csv;
    std::string t_text;
    std::string strategy = "alternating";
    std::uint64_t seed = 0;
    std::vector<int> n_list;
    std::string config_path;
    std::string out_path;
    bool list = false;

    auto* basis_cmd = app.add_subcommand("basis-check", "Partition of unity, linear reproduction, translates");
    basis_cmd->add_option("--n", n, "Number of segments")->required()->check(CLI::PositiveNumber);
    basis_cmd->add_option("--k", k, "Spline degree")->required()->check(CLI::PositiveNumber);

    auto* approx_cmd = app.add_subcommand("approx", "Sup-norm error of S_{n,k} f");
    approx_cmd->add_option("--fn", fn, "Corpus function name")->required();
    approx_cmd->add_option("--n", n, "Number of segments")->required()->check(CLI::PositiveNumber);
    approx_cmd->add_option("--k", k, "Spline degree")->required()->check(CLI::PositiveNumber);
    approx_cmd->add_option("--plot-csv", plot_csv, "Write x,f,sf,error samples to this file");

    auto* eps_cmd = app.add_subcommand("epsilon", "epsilon_{n,k} for several n");
    eps_cmd->add_option("--k", k, "Spline degree")->required()->check(CLI::PositiveNumber);
    eps_cmd->add_option("--n-list", n_list, "Segment counts")->required()->delimiter(',');

    auto* bounds_cmd = app.add_subcommand("bounds", "Bound report for one (f, n, k, t)");
    bounds_cmd->add_option("--fn", fn, "Corpus function name")->required();
    bounds_cmd->add_option("--n", n, "Number of segments")->required()->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--k", k, "Spline degree")->required()->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--t", t_text, "t as a real, a multiple of h, or auto-δ")->required();
    bounds_cmd->add_option("--dk-strategy", strategy, "alternating or grid_lp");
    bounds_cmd->add_option("--seed", seed, "Seed for grid_lp");

    auto* sweep_cmd = app.add_subcommand("sweep", "Run a configured sweep");
    sweep_cmd->add_option("--config", config_path, "Key-value config file")->required();
    sweep_cmd->add_option("--out", out_path, "Output file (default stdout)");

    auto* corpus_cmd = app.add_subcommand("corpus", "Built-in test functions");
    corpus_cmd->add_flag("--list", list, "List corpus members");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (*basis_cmd) {
            return run_basis_check(n, k);
        }
        if (*approx_cmd) {
            return run_approx(fn, n, k, plot_csv);
        }
        if (*eps_cmd) {
            return run_epsilon(k, n_list);
        }
        if (*bounds_cmd) {
            return run_bounds(fn, n, k, t_text, strategy, seed);
        }
        if (*sweep_cmd) {
            return run_sweep_command(config_path, out_path);
        }
        if (*corpus_cmd) {
            return run_corpus_list();
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}
