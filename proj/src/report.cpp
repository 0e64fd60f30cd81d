#include "gcdphi/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>

#include "gcdphi/errors.hpp"
#include "gcdphi/multiplicative.hpp"
#include "json.hpp"

namespace gcdphi {

namespace {

using nlohmann::json;

json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return nullptr;
                return v;
            } else {
                return v;
            }
        },
        c);
}

Cell value_cell(const std::variant<i64, double>& v) {
    return std::visit([](auto x) { return Cell(x); }, v);
}

}  // namespace

void RunConfig::validate() const {
    if (x_grid.empty()) throw ConfigError("x grid is empty");
    for (std::size_t i = 1; i < x_grid.size(); ++i) {
        if (x_grid[i] <= x_grid[i - 1]) throw ConfigError("x grid must be strictly ascending");
    }
    if (workers < 1) throw ConfigError("worker count must be >= 1");
    if (segment < 1) throw ConfigError("segment size must be >= 1");
    settings().validate();
}

u64 parse_x(std::string_view text) {
    const std::string s(text);
    if (s.empty()) throw ConfigError("empty x value");
    if (s.find_first_of("eE.") == std::string::npos) {
        u64 v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            throw ConfigError("x value '" + s + "' is not an integer");
        }
        if (v < 1 || v > kMaxN) throw ConfigError("x value '" + s + "' outside [1, 2^40]");
        return v;
    }
    char* end = nullptr;
    const long double v = std::strtold(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v)) {
        throw ConfigError("x value '" + s + "' is not a number");
    }
    if (v < 1.0L || v > static_cast<long double>(kMaxN) || v != std::floor(v)) {
        throw ConfigError("x value '" + s + "' is not an integer in [1, 2^40]");
    }
    return static_cast<u64>(v);
}

std::vector<u64> parse_x_list(std::string_view text) {
    std::vector<u64> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? text.npos
                                                                               : comma - start);
        if (!piece.empty()) out.push_back(parse_x(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string format_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (std::isnan(v)) return "nan";
                if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", v);
                return buf;
            } else if constexpr (std::is_same_v<T, i64>) {
                return std::to_string(v);
            } else {
                return v;
            }
        },
        c);
}

namespace {

std::string csv_field(const Cell& c) {
    std::string s = format_cell(c);
    if (std::holds_alternative<std::string>(c) && s.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char ch : s) {
            if (ch == '"') quoted += '"';
            quoted += ch;
        }
        return quoted + "\"";
    }
    return s;
}

}  // namespace

std::string Table::to_csv() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
        out << '\n';
    }
    return out.str();
}

std::string Table::to_json(const RunConfig& config) const {
    json doc;
    doc["config"] = {
        {"spec", config.spec},       {"x_grid", config.x_grid},
        {"K", config.K},             {"tol", config.tol},
        {"prime_cutoff", config.prime_cutoff}, {"segment", config.segment},
        {"threads", config.workers}, {"seed", config.seed},
    };
    json rows_json = json::array();
    for (const auto& row : rows) {
        json r = json::object();
        for (std::size_t i = 0; i < header.size() && i < row.size(); ++i) {
            r[header[i]] = cell_json(row[i]);
        }
        rows_json.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows_json);
    json certs = json::object();
    for (const auto& [k, v] : certificates) certs[k] = cell_json(v);
    doc["certificates"] = std::move(certs);
    return doc.dump(2) + "\n";
}

double safe_ratio(double empirical, double prediction) {
    if (prediction == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return empirical / prediction;
}

Table ComparisonReport::table() const {
    Table t;
    t.header = {"x", "empirical", "pred_main", "pred_leading",
                "ratio_main", "ratio_leading", "q_g", "tail_bound"};
    double worst_tail = 0.0;
    for (const auto& r : rows) {
        t.rows.push_back({static_cast<i64>(r.x), value_cell(r.empirical), r.prediction_main,
                          r.prediction_leading, r.ratio_main, r.ratio_leading, r.q_g_value,
                          r.tail_error_bound});
        worst_tail = std::max(worst_tail, r.tail_error_bound);
    }
    t.certificates["spec"] = spec;
    t.certificates["leading_form"] = leading_form;
    t.certificates["max_q_g_tail_bound"] = worst_tail;
    return t;
}

Table run_scan(const RunConfig& config) {
    config.validate();
    const MultiplicativeSpec spec = builtin_spec(config.spec);
    Table t;
    t.header = {"x", "spec", "empirical", "runtime_ms"};
    for (u64 x : config.x_grid) {
        const ScanResult r = s_direct(spec, x, config.scan_options());
        t.rows.push_back({static_cast<i64>(x), spec.name(), value_cell(r.value), r.runtime_ms});
    }
    return t;
}

ComparisonReport run_compare(const RunConfig& config) {
    config.validate();
    const MultiplicativeSpec spec = builtin_spec(config.spec);
    const PredictionSettings settings = config.settings();
    const std::string family = spec_family(spec.name());

    ComparisonReport report;
    report.spec = spec.name();
    report.leading_form = family.empty() ? "corollary_product" : "family:" + family;
    for (u64 x : config.x_grid) {
        const double xd = static_cast<double>(x);
        const ScanResult scan = s_direct(spec, x, config.scan_options());
        const Certified q = q_g(spec, xd, settings);

        ComparisonRow row;
        row.x = x;
        row.empirical = scan.value;
        row.prediction_main = corollary_product(spec, xd) * std::exp(q.value);
        row.prediction_leading =
            family.empty() ? corollary_product(spec, xd) : prediction(family, xd, settings).leading;
        row.ratio_main = safe_ratio(scan.as_double(), row.prediction_main);
        row.ratio_leading = safe_ratio(scan.as_double(), row.prediction_leading);
        row.q_g_value = q.value;
        row.tail_error_bound = q.error_bound;
        report.rows.push_back(row);
    }
    return report;
}

Table run_predict(const RunConfig& config, std::string_view family) {
    config.validate();
    const PredictionSettings settings = config.settings();
    Table t;
    t.header = {"x", "family", "pred_main", "leading", "u", "expansion_value"};
    for (int k = 0; k <= settings.K; ++k) t.header.push_back("c" + std::to_string(k));
    for (u64 x : config.x_grid) {
        const Prediction p = prediction(family, static_cast<double>(x), settings);
        std::vector<Cell> row = {static_cast<i64>(x), p.family, p.value,
                                 p.leading,           p.u,      p.expansion_value};
        for (double c : p.expansion.coeffs) row.emplace_back(c);
        t.rows.push_back(std::move(row));
    }
    t.certificates["prime_cutoff"] = static_cast<i64>(settings.prime_cutoff);
    t.certificates["tol"] = settings.tol;
    return t;
}

Table run_constants(const RunConfig& config) {
    const PredictionSettings settings = config.settings();
    settings.validate();
    Table t;
    t.header = {"name", "value", "error_bound"};
    t.rows.push_back({std::string("euler_gamma"), euler_gamma(), 1e-15});
    const Certified c = mertens_constant(settings);
    t.rows.push_back({std::string("mertens_c"), c.value, c.error_bound});
    for (int r = 2; r <= 6; ++r) {
        const Certified z = zeta(r, settings);
        t.rows.push_back({"zeta(" + std::to_string(r) + ")", z.value, z.error_bound});
    }
    const Certified b = landau_ramanujan(settings);
    t.rows.push_back({std::string("landau_ramanujan_B"), b.value, b.error_bound});

    PredictionSettings coarse = settings;
    coarse.prime_cutoff = std::max<u64>(100'000, settings.prime_cutoff / 10);
    const Certified b_coarse = landau_ramanujan(coarse);
    const double delta = std::abs(b.value - b_coarse.value);
    t.rows.push_back({std::string("landau_ramanujan_B_cutoff_delta"), delta,
                      b.error_bound + b_coarse.error_bound});
    t.certificates["B_two_cutoff_delta"] = delta;
    t.certificates["B_coarse_cutoff"] = static_cast<i64>(coarse.prime_cutoff);
    t.certificates["zeta2_minus_pi2_over_6"] =
        zeta(2, settings).value - std::numbers::pi * std::numbers::pi / 6.0;
    t.certificates["prime_cutoff"] = static_cast<i64>(settings.prime_cutoff);
    return t;
}

Table run_coeffs(const RunConfig& config) {
    const PredictionSettings settings = config.settings();
    settings.validate();
    Table t;
    t.header = {"k", "a_k", "a_err", "b_k", "b_err", "b_minus_a", "F_k", "F_err", "identity_gap"};
    double worst_gap = 0.0;
    for (int k = 0; k <= settings.K; ++k) {
        const Certified a = a_coeff(k, settings);
        const Certified b = b_coeff(k, settings);
        const Certified f = gamma_laurent_F(k, settings);
        const double gap = std::abs((b.value - a.value) - f.value);
        worst_gap = std::max(worst_gap, gap);
        t.rows.push_back({static_cast<i64>(k), a.value, a.error_bound, b.value, b.error_bound,
                          b.value - a.value, f.value, f.error_bound, gap});
    }
    t.certificates["max_identity_gap"] = worst_gap;
    t.certificates["gamma_gap"] = std::abs(b_coeff(0, settings).value -
                                           a_coeff(0, settings).value - euler_gamma());
    return t;
}

bool VerifyReport::all_passed() const {
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

Table VerifyReport::table() const {
    Table t;
    t.header = {"check", "status", "detail"};
    i64 failed = 0;
    for (const auto& c : checks) {
        t.rows.push_back({c.name, std::string(c.passed ? "pass" : "FAIL"), c.detail});
        failed += c.passed ? 0 : 1;
    }
    t.certificates["checks"] = static_cast<i64>(checks.size());
    t.certificates["failed"] = failed;
    return t;
}

}  // namespace gcdphi
