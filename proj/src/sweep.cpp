#include "schoenberg/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include <fmt/format.h>

#include "schoenberg/corpus.hpp"

namespace schoenberg {

namespace {

std::string_view trim(std::string_view s) {
    const auto not_space = [](char c) { return !std::isspace(static_cast<unsigned char>(c)); };
    while (!s.empty() && !not_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && !not_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == ',' || std::isspace(static_cast<unsigned char>(s[i]))) {
            const std::string_view item = trim(s.substr(start, i - start));
            if (!item.empty()) {
                out.push_back(item);
            }
            start = i + 1;
        }
    }
    return out;
}

double parse_real(std::string_view text, std::string_view field) {
    const std::string s(trim(text));
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        return parse_real(std::string_view(s).substr(0, slash), field) /
               parse_real(std::string_view(s).substr(slash + 1), field);
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size() || !std::isfinite(v)) {
        throw ConfigError(std::string(field) + ": '" + s + "' is not a real number");
    }
    return v;
}

long long parse_integer(std::string_view text, std::string_view field) {
    const std::string_view s = trim(text);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ConfigError(std::string(field) + ": '" + std::string(s) + "' is not an integer");
    }
    return v;
}

std::vector<int> parse_int_list(std::string_view text, std::string_view field) {
    std::vector<int> out;
    for (const auto item : split_list(text)) {
        out.push_back(static_cast<int>(parse_integer(item, field)));
    }
    return out;
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string_view flag(bool b) { return b ? "true" : "false"; }

std::string json_string(std::string_view s) {
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

TSpec TSpec::parse(std::string_view text) {
    const std::string_view s = trim(text);
    if (s == "auto-δ" || s == "auto-delta" || s == "auto" || s == "delta" || s == "δ") {
        return {Kind::auto_delta, 0.0};
    }
    if (!s.empty() && s.back() == 'h') {
        const std::string_view factor = s.substr(0, s.size() - 1);
        return {Kind::gauge_multiple, factor.empty() ? 1.0 : parse_real(factor, "t_list")};
    }
    return {Kind::absolute, parse_real(s, "t_list")};
}

std::string TSpec::to_string() const {
    switch (kind) {
        case Kind::auto_delta:
            return "auto-δ";
        case Kind::gauge_multiple:
            return value == 1.0 ? "h" : fmt::format("{}h", value);
        case Kind::absolute:
            return fmt::format("{}", value);
    }
    return {};
}

double TSpec::resolve(const UniformMesh& mesh, double delta_value) const {
    switch (kind) {
        case Kind::auto_delta:
            return delta_value;
        case Kind::gauge_multiple:
            return value * mesh.gauge();
        case Kind::absolute:
            return value;
    }
    return value;
}

void SweepConfig::validate() const {
    if (n_list.empty()) {
        throw ConfigError("n_list: must not be empty");
    }
    if (k_list.empty()) {
        throw ConfigError("k_list: must not be empty");
    }
    if (t_list.empty()) {
        throw ConfigError("t_list: must not be empty");
    }
    for (const int k : k_list) {
        if (k < 3) {
            throw ConfigError("k_list: k = " + std::to_string(k) + " but bound sweeps need k >= 3");
        }
    }
    for (const int n : n_list) {
        if (n < 1) {
            throw ConfigError("n_list: n = " + std::to_string(n) + " must be positive");
        }
        for (const int k : k_list) {
            if (n < min_epsilon_segments(k)) {
                throw ConfigError("n_list: n = " + std::to_string(n) + " too small for k = " +
                                  std::to_string(k) + " (needs n >= 4k+8 = " +
                                  std::to_string(min_epsilon_segments(k)) + ")");
            }
        }
        for (const auto& t : t_list) {
            if (t.kind == TSpec::Kind::auto_delta) {
                continue;
            }
            const double tv = t.kind == TSpec::Kind::absolute ? t.value : t.value / n;
            if (!(tv > 0.0 && tv <= 0.5)) {
                throw ConfigError("t_list: " + t.to_string() + " gives t = " + num(tv) +
                                  " outside (0, 1/2] for n = " + std::to_string(n));
            }
        }
    }
    for (const auto& name : function_names) {
        try {
            (void)find_function(name);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("functions: ") + e.what());
        }
    }
    try {
        grid.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(five_constant > 0.0)) {
        throw ConfigError("five_constant: must be positive");
    }
}

SweepConfig parse_config(std::string_view text) {
    SweepConfig config;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key(trim(view.substr(0, eq)));
        const std::string_view value = trim(view.substr(eq + 1));

        if (key == "n_list") {
            config.n_list = parse_int_list(value, key);
        } else if (key == "k_list") {
            config.k_list = parse_int_list(value, key);
        } else if (key == "t_list") {
            config.t_list.clear();
            for (const auto item : split_list(value)) {
                config.t_list.push_back(TSpec::parse(item));
            }
        } else if (key == "functions" || key == "function_names") {
            config.function_names.clear();
            for (const auto item : split_list(value)) {
                config.function_names.emplace_back(item);
            }
        } else if (key == "x_points") {
            config.grid.x_points = static_cast<int>(parse_integer(value, key));
        } else if (key == "h_points") {
            config.grid.h_points = static_cast<int>(parse_integer(value, key));
        } else if (key == "dk_strategy") {
            try {
                config.dk_strategy = parse_dk_strategy(value);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("dk_strategy: ") + e.what());
            }
        } else if (key == "output_format") {
            if (value == "csv") {
                config.output_format = OutputFormat::csv;
            } else if (value == "json") {
                config.output_format = OutputFormat::json;
            } else {
                throw ConfigError("output_format: expected csv or json, got '" +
                                  std::string(value) + "'");
            }
        } else if (key == "seed") {
            const long long seed = parse_integer(value, key);
            if (seed < 0) {
                throw ConfigError("seed: must be non-negative");
            }
            config.seed = static_cast<std::uint64_t>(seed);
        } else if (key == "five_constant") {
            config.five_constant = parse_real(value, key);
        } else {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    config.validate();
    return config;
}

SweepConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("config: cannot open '" + path.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

SweepTable run_sweep(const SweepConfig& config) {
    config.validate();
    std::vector<const TestFunction*> functions;
    if (config.function_names.empty()) {
        for (const auto& f : builtin_corpus()) {
            functions.push_back(&f);
        }
    } else {
        for (const auto& name : config.function_names) {
            functions.push_back(&find_function(name));
        }
    }

    std::map<std::pair<int, int>, double> dk_cache;
    const auto dk_for = [&](const UniformMesh& mesh) {
        const auto key = std::make_pair(mesh.segments(), mesh.degree());
        auto it = dk_cache.find(key);
        if (it == dk_cache.end()) {
            it = dk_cache.emplace(key, estimate_dk(mesh, config.dk_strategy, config.seed)).first;
        }
        return it->second;
    };

    SweepTable table;
    for (const TestFunction* f : functions) {
        const Omega2Profile profile(f->evaluator, config.grid);
        for (const int n : config.n_list) {
            for (const int k : config.k_list) {
                const UniformMesh mesh(n, k);
                const double d_k = dk_for(mesh);
                const double delta_value = delta(mesh, d_k);
                MeasuredBounds measured;
                measured.error_norm =
                    sup_norm_error(f->evaluator, schoenberg(mesh, f->evaluator), config.grid);
                measured.omega2_at_delta = profile.at(delta_value);
                for (const auto& t_spec : config.t_list) {
                    const double t = t_spec.resolve(mesh, delta_value);
                    measured.omega2_t = profile.at(t);
                    table.rows.push_back({f->name, assemble_report(mesh, t, d_k, config.dk_strategy,
                                                                   measured, config.five_constant)});
                }
            }
        }
    }
    return table;
}

std::string to_csv(const SweepTable& table) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& [fn, r] : table.rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", fn, r.n, r.k, num(r.t),
                           num(r.delta), num(r.omega2_t), num(r.omega2_at_delta),
                           num(r.error_norm), num(r.epsilon_nk), num(r.d_k), num(r.lower_const),
                           num(r.upper_const), flag(r.five_check), flag(r.sandwich_check),
                           num(r.slack));
    }
    return out;
}

std::string to_json(const SweepTable& table) {
    std::string out = "[";
    bool first = true;
    for (const auto& [fn, r] : table.rows) {
        out += first ? "\n" : ",\n";
        first = false;
        out += fmt::format(
            "  {{\"fn\": {}, \"n\": {}, \"k\": {}, \"t\": {}, \"delta\": {}, \"omega2_t\": {}, "
            "\"omega2_delta\": {}, \"err_norm\": {}, \"epsilon_nk\": {}, \"d_k\": {}, "
            "\"lower_const\": {}, \"upper_const\": {}, \"five_check\": {}, "
            "\"sandwich_check\": {}, \"slack\": {}}}",
            json_string(fn), r.n, r.k, num(r.t), num(r.delta), num(r.omega2_t),
            num(r.omega2_at_delta), num(r.error_norm), num(r.epsilon_nk), num(r.d_k),
            num(r.lower_const), num(r.upper_const), flag(r.five_check), flag(r.sandwich_check),
            num(r.slack));
    }
    out += first ? "]\n" : "\n]\n";
    return out;
}

std::string serialize(const SweepTable& table, OutputFormat format) {
    return format == OutputFormat::json ? to_json(table) : to_csv(table);
}

int exit_code(const SweepTable& table) {
    const bool ok = std::all_of(table.rows.begin(), table.rows.end(), [](const SweepRow& row) {
        return row.report.five_check && row.report.sandwich_check;
    });
    return ok ? 0 : 1;
}

BasisCheck basis_check(int n, int k) {
    const UniformMesh mesh(n, k);
    BasisCheck out;
    out.n = n;
    out.k = k;

    constexpr int kPoints = 200;
    const std::vector<std::pair<double, double>> linears{{1.0, 0.0}, {-3.0, 2.0}, {10.0, -10.0}};
    std::vector<SplineFunction> reproductions;
    for (const auto& [a, b] : linears) {
        reproductions.push_back(schoenberg(mesh, [a = a, b = b](double x) { return a * x + b; }));
    }
    for (int p = 0; p < kPoints; ++p) {
        const double x = static_cast<double>(p) / (kPoints - 1);
        double sum = 0.0;
        for (const double v : basis_span(mesh, k, x).values) {
            sum += v;
        }
        out.partition_of_unity = std::max(out.partition_of_unity, std::abs(sum - 1.0));
        for (std::size_t q = 0; q < linears.size(); ++q) {
            const double exact = linears[q].first * x + linears[q].second;
            out.linear_reproduction =
                std::max(out.linear_reproduction, std::abs(reproductions[q](x) - exact));
        }
    }

    // Translates: interior basis functions at Greville nodes in the uniform range.
    const GrevilleNodes xi = greville_nodes(mesh, k);
    for (int j = 0; j <= n - k - 2; ++j) {
        for (int i = 0; i <= n - k; ++i) {
            out.shift_invariance =
                std::max(out.shift_invariance, std::abs(bspline_value(mesh, k, j + 1, xi[i]) -
                                                        bspline_value(mesh, k, j, xi[i - 1])));
        }
    }

    const CollocationMatrix a = collocation_matrix(mesh);
    for (Eigen::Index i = 0; i < a.entries().rows(); ++i) {
        out.collocation_row_sum =
            std::max(out.collocation_row_sum, std::abs(a.entries().row(i).sum() - 1.0));
    }

    if (n <= 16 && k <= 5) {
        out.oracle_agreement = 0.0;
        for (int p = 0; p <= 100; ++p) {
            const double x = p / 100.0;
            for (int j = -k; j < n; ++j) {
                out.oracle_agreement =
                    std::max(out.oracle_agreement, std::abs(bspline_value(mesh, k, j, x) -
                                                            bspline_value_reference(mesh, k, j, x)));
            }
        }
    }

    out.passed = out.partition_of_unity < 1e-12 && out.linear_reproduction < 1e-12 &&
                 out.shift_invariance < 1e-13 && out.collocation_row_sum < 1e-12 &&
                 out.oracle_agreement < 1e-8;
    return out;
}

}  // namespace schoenberg
