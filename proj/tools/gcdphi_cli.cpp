// gcdphi: exact statistics of gcd(n, phi(n)) and their asymptotic predictions.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 numeric failure,
// 3 verification failure.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gcdphi/errors.hpp"
#include "gcdphi/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitVerify = 3;

void emit(const gcdphi::Table& table, const gcdphi::RunConfig& config) {
    const std::string text = config.format == gcdphi::OutputFormat::json ? table.to_json(config)
                                                                         : table.to_csv();
    if (config.output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) throw gcdphi::ConfigError("cannot open output file '" + config.output_path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact statistics of gcd(n, phi(n)) against asymptotic predictions"};
    app.require_subcommand(1);
    app.fallthrough();

    gcdphi::RunConfig config;
    std::string x_single;
    std::string x_list;
    std::string format = "csv";
    std::string family = "erdos";
    std::string suite = "all";

    app.add_option("--spec", config.spec,
                   "Weight g: mu, tau, rpower:R, rfree:R, two-squares, smooth:B, rough:B");
    app.add_option("--x", x_single, "Single x (scientific notation allowed, e.g. 1e8)");
    app.add_option("--xs", x_list, "Comma-separated ascending x grid");
    app.add_option("--K", config.K, "Expansion order");
    app.add_option("--tol", config.tol, "Numeric tolerance");
    app.add_option("--prime-cutoff", config.prime_cutoff, "Truncation for infinite prime sums");
    app.add_option("--segment", config.segment, "Integers per sieve segment");
    app.add_option("--threads", config.workers, "Worker count");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", config.output_path, "Output file (default: stdout)");
    app.add_option("--seed", config.seed, "Seed for randomized checks");

    auto* scan = app.add_subcommand("scan", "Empirical S_g(x) by direct summation");
    auto* compare = app.add_subcommand("compare", "Empirical S_g(x) against predictions");
    auto* predict = app.add_subcommand("predict", "Closed-form family prediction and expansion");
    predict->add_option("--family", family, "erdos, rpower:R, rfree:R, two-squares, divisor-avg");
    auto* constants = app.add_subcommand("constants", "gamma, Mertens c, zeta(2..6), B");
    auto* coeffs = app.add_subcommand("coeffs", "a_k, b_k and F^(k)(0) for k <= K");
    auto* verify = app.add_subcommand("verify", "Run self-check suites");
    verify->add_option("--suite", suite, "identities, sieve, coefficients, predictions, all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        config.format = format == "json" ? gcdphi::OutputFormat::json : gcdphi::OutputFormat::csv;
        if (!x_single.empty()) config.x_grid.push_back(gcdphi::parse_x(x_single));
        if (!x_list.empty()) {
            for (auto x : gcdphi::parse_x_list(x_list)) config.x_grid.push_back(x);
        }

        if (scan->parsed()) {
            emit(gcdphi::run_scan(config), config);
        } else if (compare->parsed()) {
            emit(gcdphi::run_compare(config).table(), config);
        } else if (predict->parsed()) {
            emit(gcdphi::run_predict(config, family), config);
        } else if (constants->parsed()) {
            emit(gcdphi::run_constants(config), config);
        } else if (coeffs->parsed()) {
            emit(gcdphi::run_coeffs(config), config);
        } else if (verify->parsed()) {
            const gcdphi::VerifyReport report = gcdphi::run_verify(suite, config);
            emit(report.table(), config);
            if (!report.all_passed()) return kExitVerify;
        }
    } catch (const gcdphi::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const gcdphi::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}
