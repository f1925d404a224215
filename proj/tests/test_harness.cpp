#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "schoenberg/corpus.hpp"
#include "schoenberg/sweep.hpp"

using namespace schoenberg;

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep)) {
        out.push_back(item);
    }
    return out;
}

std::string config_error(std::string_view text) {
    try {
        (void)parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

SweepConfig small_config() {
    SweepConfig c;
    c.n_list = {32};
    c.k_list = {3};
    c.t_list = {TSpec::parse("h"), TSpec::parse("auto-δ")};
    c.function_names = {"abs_half", "linear"};
    return c;
}

}  // namespace

TEST_CASE("corpus membership and values") {
    std::set<std::string> names;
    for (const auto& f : builtin_corpus()) {
        names.insert(f.name);
        for (const double x : {0.0, 0.5, 1.0}) {
            CHECK(std::isfinite(f(x)));
        }
    }
    CHECK(names == std::set<std::string>{"linear", "square", "sin2pi", "abs_half", "sqrt_third",
                                          "broken_line", "runge"});
    const TestFunction& kink = find_function("abs_half");
    CHECK(kink(0.0) == 0.5);
    CHECK(kink(0.5) == 0.0);
    CHECK(kink(1.0) == 0.5);
    CHECK(find_function("linear").smoothness == Smoothness::linear);
    CHECK(find_function("broken_line")(0.3) == doctest::Approx(0.6));
    CHECK(find_function("broken_line")(0.7) == doctest::Approx(0.2));
    CHECK_THROWS_AS(find_function("cosine"), std::invalid_argument);
}

TEST_CASE("t specifications") {
    const UniformMesh mesh(64, 3);
    CHECK(TSpec::parse("0.25").resolve(mesh, 0.0) == 0.25);
    CHECK(TSpec::parse("1/4").resolve(mesh, 0.0) == 0.25);
    CHECK(TSpec::parse("h").resolve(mesh, 0.0) == mesh.gauge());
    CHECK(TSpec::parse("2h").resolve(mesh, 0.0) == 2 * mesh.gauge());
    for (const char* text : {"auto-δ", "auto-delta", "auto", "delta"}) {
        CHECK(TSpec::parse(text).kind == TSpec::Kind::auto_delta);
        CHECK(TSpec::parse(text).resolve(mesh, 0.003) == 0.003);
    }
    CHECK(TSpec::parse("2h").to_string() == "2h");
    CHECK_THROWS_AS(TSpec::parse("quarter"), ConfigError);
}

TEST_CASE("config parsing") {
    const SweepConfig c = parse_config(
        "# comment line\n"
        "n_list = 40, 80\n"
        "k_list = 3 4\n"
        "t_list = h, 1/8, auto-delta   # trailing comment\n"
        "functions = runge, square\n"
        "x_points = 1025\n"
        "h_points = 128\n"
        "dk_strategy = grid_lp\n"
        "output_format = json\n"
        "seed = 42\n"
        "five_constant = 4.5\n");
    CHECK(c.n_list == std::vector<int>{40, 80});
    CHECK(c.k_list == std::vector<int>{3, 4});
    REQUIRE(c.t_list.size() == 3);
    CHECK(c.t_list[1].value == 0.125);
    CHECK(c.function_names == std::vector<std::string>{"runge", "square"});
    CHECK(c.grid.x_points == 1025);
    CHECK(c.grid.h_points == 128);
    CHECK(c.dk_strategy == DkStrategy::grid_lp);
    CHECK(c.output_format == OutputFormat::json);
    CHECK(c.seed == 42);
    CHECK(c.five_constant == 4.5);

    const SweepConfig defaults = parse_config("");
    CHECK(defaults.n_list == std::vector<int>{32, 64, 128});
    CHECK(defaults.t_list.size() == 4);
}

TEST_CASE("config errors name the offending field") {
    CHECK(config_error("k_list = 2\n").find("k_list") == 0);
    CHECK(config_error("n_list = 10\n").find("n_list") == 0);
    CHECK(config_error("n_list = ten\n").find("n_list") == 0);
    CHECK(config_error("t_list = 0.75\n").find("t_list") == 0);
    CHECK(config_error("functions = cosine\n").find("functions") == 0);
    CHECK(config_error("output_format = xml\n").find("output_format") == 0);
    CHECK(config_error("dk_strategy = simplex\n").find("dk_strategy") == 0);
    CHECK(config_error("seed = -1\n").find("seed") == 0);
    CHECK(config_error("colour = blue\n").find("unknown key 'colour'") != std::string::npos);
    CHECK(config_error("just words\n").find("line 1") == 0);
    CHECK_THROWS_AS(load_config("/nonexistent/sweep.conf"), ConfigError);
}

TEST_CASE("headline sweep row") {
    SweepConfig c;
    c.n_list = {32};
    c.k_list = {3};
    c.t_list = {TSpec::parse("auto-δ")};
    c.function_names = {"abs_half"};
    const SweepTable table = run_sweep(c);
    REQUIRE(table.rows.size() == 1);
    const BoundReport& r = table.rows[0].report;
    CHECK(r.five_check);
    CHECK(r.t == r.delta);
    CHECK(r.lower_const == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(exit_code(table) == 0);
}

TEST_CASE("sweep rows follow the configured order") {
    const SweepTable table = run_sweep(small_config());
    REQUIRE(table.rows.size() == 4);
    CHECK(table.rows[0].function == "abs_half");
    CHECK(table.rows[3].function == "linear");
    CHECK(table.rows[2].report.omega2_t < 1e-14);
    CHECK(table.rows[2].report.error_norm < 1e-13);
}

TEST_CASE("CSV and JSON carry the same fields") {
    const SweepTable table = run_sweep(small_config());
    const std::string csv = to_csv(table);
    std::stringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == kCsvHeader);
    const std::vector<std::string> columns = split(header, ',');

    const nlohmann::json doc = nlohmann::json::parse(to_json(table));
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == table.rows.size());
    std::string line;
    for (const auto& obj : doc) {
        REQUIRE(std::getline(lines, line));
        const std::vector<std::string> cells = split(line, ',');
        REQUIRE(cells.size() == columns.size());
        CHECK(obj.size() == columns.size());
        for (std::size_t i = 0; i < columns.size(); ++i) {
            REQUIRE(obj.contains(columns[i]));
            const auto& v = obj[columns[i]];
            if (v.is_string()) {
                CHECK(v.get<std::string>() == cells[i]);
            } else if (v.is_boolean()) {
                CHECK((v.get<bool>() ? "true" : "false") == cells[i]);
            } else {
                CHECK(v.get<double>() == std::stod(cells[i]));
            }
        }
    }
    CHECK_FALSE(std::getline(lines, line));
}

TEST_CASE("numbers round-trip exactly") {
    const SweepTable table = run_sweep(small_config());
    const nlohmann::json doc = nlohmann::json::parse(to_json(table));
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const BoundReport& r = table.rows[i].report;
        CHECK(doc[i]["delta"].get<double>() == r.delta);
        CHECK(doc[i]["err_norm"].get<double>() == r.error_norm);
        CHECK(doc[i]["d_k"].get<double>() == r.d_k);
    }
}

TEST_CASE("sweeps are deterministic") {
    SweepConfig c = small_config();
    c.dk_strategy = DkStrategy::grid_lp;
    c.seed = 123;
    CHECK(to_csv(run_sweep(c)) == to_csv(run_sweep(c)));
    CHECK(to_json(run_sweep(c)) == to_json(run_sweep(c)));
}

TEST_CASE("exit code reflects failed checks") {
    SweepConfig c = small_config();
    c.five_constant = 0.01;
    const SweepTable table = run_sweep(c);
    CHECK(exit_code(table) == 1);
    SweepTable empty;
    CHECK(exit_code(empty) == 0);
    CHECK(serialize(empty, OutputFormat::json) == "[]\n");
    CHECK(serialize(empty, OutputFormat::csv) == std::string(kCsvHeader) + "\n");
}

TEST_CASE("basis checks pass for typical meshes") {
    for (const auto& [n, k] : {std::pair{16, 5}, std::pair{64, 8}, std::pair{1, 1}}) {
        const BasisCheck b = basis_check(n, k);
        CHECK(b.passed);
    }
    CHECK(basis_check(16, 5).oracle_agreement >= 0.0);
    CHECK(basis_check(64, 8).oracle_agreement < 0.0);
}
