#pragma once

/**
 * @file report.hpp
 * @brief Run configuration, comparison reports and their CSV/JSON encodings.
 *
 * Every table serializes as CSV (one header line) or as a JSON object
 * {config: {...}, rows: [...], certificates: {...}} whose row keys are the CSV
 * header names. Reals are written with 17 significant digits, so both forms
 * carry identical numbers.
 */

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gcdphi/arith.hpp"
#include "gcdphi/asymptotics.hpp"
#include "gcdphi/scan.hpp"

namespace gcdphi {

enum class OutputFormat { csv, json };

struct RunConfig {
    std::string spec = "mu";
    std::vector<u64> x_grid;
    int K = 4;
    double tol = 1e-12;
    u64 prime_cutoff = 10'000'000;
    u64 segment = kDefaultSegment;
    unsigned workers = 1;
    OutputFormat format = OutputFormat::csv;
    std::string output_path;  // empty: stdout
    std::uint64_t seed = 20240101;

    PredictionSettings settings() const { return {tol, prime_cutoff, K}; }
    ScanOptions scan_options() const { return {segment, workers}; }

    /// Throws ConfigError on an empty or non-ascending grid, zero workers, ...
    void validate() const;
};

/// "1e8", "2.5e6", "100000" -> integer. Throws ConfigError if not a positive
/// integer within 2^40.
u64 parse_x(std::string_view text);
/// Comma-separated list of parse_x values.
std::vector<u64> parse_x_list(std::string_view text);

/// A cell: exact integer, real, or text.
using Cell = std::variant<i64, double, std::string>;

/// %.17g for reals (nan/inf spelled out), plain digits for integers.
std::string format_cell(const Cell& c);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
    std::map<std::string, Cell> certificates;

    std::string to_csv() const;
    std::string to_json(const RunConfig& config) const;
};

inline constexpr const char* kCompareHeader =
    "x,empirical,pred_main,pred_leading,ratio_main,ratio_leading,q_g,tail_bound";

struct ComparisonRow {
    u64 x = 0;
    std::variant<i64, double> empirical;
    double prediction_main = 0.0;
    double prediction_leading = 0.0;
    double ratio_main = 0.0;
    double ratio_leading = 0.0;
    double q_g_value = 0.0;
    double tail_error_bound = 0.0;
};

struct ComparisonReport {
    std::string spec;
    /// "family:<name>" when a closed form exists, else "corollary_product".
    std::string leading_form;
    std::vector<ComparisonRow> rows;

    Table table() const;
};

/// empirical / prediction, NaN when the prediction is 0.
double safe_ratio(double empirical, double prediction);

/// Empirical S_g(x) on the grid; columns x,spec,empirical,runtime_ms.
Table run_scan(const RunConfig& config);

/// Rows of empirical S_g(x) against the Euler product main term and the leading form.
ComparisonReport run_compare(const RunConfig& config);

/// Closed-form family prediction with its expansion coefficients.
Table run_predict(const RunConfig& config, std::string_view family);

/// gamma, Mertens c, zeta(2..6), Landau-Ramanujan B and certificates.
Table run_constants(const RunConfig& config);

/// a_k, b_k, F^{(k)}(0) for k = 0..K.
Table run_coeffs(const RunConfig& config);

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_passed() const;
    Table table() const;
};

/// suite in {identities, sieve, coefficients, predictions, all}; ConfigError otherwise.
VerifyReport run_verify(std::string_view suite, const RunConfig& config);

}  // namespace gcdphi
