#pragma once

// Experiment sweeps over (function, n, k, t) and their CSV / JSON output.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "schoenberg/bounds.hpp"
#include "schoenberg/modulus.hpp"

namespace schoenberg {

/// Invalid sweep configuration; the message names the offending field.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A t value: absolute, a multiple of the mesh gauge ("2h"), or the delta of
/// the uniform estimate ("auto-δ").
struct TSpec {
    enum class Kind { absolute, gauge_multiple, auto_delta };
    Kind kind = Kind::absolute;
    double value = 0.0;

    /// "0.25", "1/4", "h", "2h", "0.5h", "auto-δ", "auto-delta".
    static TSpec parse(std::string_view text);
    [[nodiscard]] std::string to_string() const;
    /// Concrete t for a mesh; auto_delta resolves to `delta_value`.
    [[nodiscard]] double resolve(const UniformMesh& mesh, double delta_value) const;
};

enum class OutputFormat { csv, json };

struct SweepConfig {
    std::vector<int> n_list{32, 64, 128};
    std::vector<int> k_list{3, 4, 5};
    std::vector<TSpec> t_list{TSpec{TSpec::Kind::gauge_multiple, 1.0},
                              TSpec{TSpec::Kind::gauge_multiple, 2.0},
                              TSpec{TSpec::Kind::absolute, 0.25},
                              TSpec{TSpec::Kind::auto_delta, 0.0}};
    std::vector<std::string> function_names;  // empty: whole corpus
    GridSpec grid;
    DkStrategy dk_strategy = DkStrategy::alternating;
    OutputFormat output_format = OutputFormat::csv;
    std::uint64_t seed = 0;
    /// Constant of the uniform estimate check; lowering it gives a deliberately
    /// failing sweep.
    double five_constant = 5.0;

    /// Throws ConfigError naming the first invalid field.
    void validate() const;
};

/// Parse the flat `key = value` format; '#' starts a comment, lists are comma
/// or whitespace separated. Keys: n_list, k_list, t_list, functions, x_points,
/// h_points, dk_strategy, output_format, seed, five_constant.
SweepConfig parse_config(std::string_view text);
SweepConfig load_config(const std::filesystem::path& path);

struct SweepRow {
    std::string function;
    BoundReport report;
};

struct SweepTable {
    std::vector<SweepRow> rows;
};

/// One row per (function, n, k, t) in config order.
SweepTable run_sweep(const SweepConfig& config);

inline constexpr std::string_view kCsvHeader =
    "fn,n,k,t,delta,omega2_t,omega2_delta,err_norm,epsilon_nk,d_k,lower_const,upper_const,"
    "five_check,sandwich_check,slack";

std::string to_csv(const SweepTable& table);
std::string to_json(const SweepTable& table);
std::string serialize(const SweepTable& table, OutputFormat format);

/// 0 when every check passes, 1 otherwise.
int exit_code(const SweepTable& table);

/// Basis and operator sanity figures for one mesh.
struct BasisCheck {
    int n = 0;
    int k = 0;
    double partition_of_unity = 0.0;    ///< max |sum_j N_j(x) - 1|
    double linear_reproduction = 0.0;   ///< max |S l - l| over a few linears
    double shift_invariance = 0.0;      ///< max |N_{j+1}(xi_i) - N_j(xi_{i-1})|
    double collocation_row_sum = 0.0;   ///< max |sum_j A[i][j] - 1|
    double oracle_agreement = -1.0;     ///< vs truncated powers; -1 when skipped
    bool passed = false;
};

BasisCheck basis_check(int n, int k);

}  // namespace schoenberg
