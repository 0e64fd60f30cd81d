#include "gcdphi/multiplicative.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "gcdphi/errors.hpp"

namespace gcdphi {

namespace {

constexpr double kBoundSlack = 1e-12;

// Primes and exponents on which a new spec's bound is validated.
constexpr u64 kGridPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                               53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 1009, 10007};
constexpr int kGridMaxExponent = 12;

struct ParsedName {
    std::string family;
    std::optional<u64> param;
};

ParsedName parse_name(std::string_view text) {
    ParsedName out;
    const auto colon = text.find(':');
    out.family = std::string(text.substr(0, colon));
    if (colon != std::string_view::npos) {
        const auto digits = text.substr(colon + 1);
        u64 v = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
            throw ConfigError("spec '" + std::string(text) + "': parameter is not an integer");
        }
        out.param = v;
    }
    return out;
}

// Turns a 0/1 multiplicative indicator f into g(p^j) = f(p^j) - f(p^{j-1}).
PrimePowerFn difference_of(PrimePowerFn f) {
    return [f = std::move(f)](u64 p, int j) {
        const double prev = (j == 1) ? 1.0 : f(p, j - 1);
        return f(p, j) - prev;
    };
}

}  // namespace

MultiplicativeSpec::MultiplicativeSpec(std::string name, PrimePowerFn g, bool integer_valued,
                                       std::optional<u64> param)
    : name_(std::move(name)), g_(std::move(g)), integer_valued_(integer_valued), param_(param) {
    if (!g_) throw ConfigError("spec '" + name_ + "': missing g");
    for (u64 p : kGridPrimes) {
        for (int j = 1; j <= kGridMaxExponent; ++j) {
            const double v = g_(p, j);
            if (!std::isfinite(v) || std::abs(v) > 1.0 + kBoundSlack) {
                throw ConfigError("spec '" + name_ + "': |g(" + std::to_string(p) + "^" +
                                  std::to_string(j) + ")| exceeds 1");
            }
            if (integer_valued_ && v != std::round(v)) {
                throw ConfigError("spec '" + name_ + "': declared integer-valued but g(" +
                                  std::to_string(p) + "^" + std::to_string(j) +
                                  ") is not an integer");
            }
        }
    }
}

double MultiplicativeSpec::g_at(u64 p, int j) const {
    if (j == 0) return 1.0;
    const double v = g_(p, j);
    if (!(std::abs(v) <= 1.0 + kBoundSlack)) {
        throw DomainError("spec '" + name_ + "': |g(" + std::to_string(p) + "^" +
                          std::to_string(j) + ")| exceeds 1");
    }
    return v;
}

std::optional<PrimePowerFn> indicator_of(std::string_view text) {
    const auto [family, param] = parse_name(text);
    auto need_param = [&](u64 min) {
        if (!param || *param < min) {
            throw ConfigError("spec '" + std::string(text) + "': needs parameter >= " +
                              std::to_string(min));
        }
        return *param;
    };
    if (family == "mu" || family == "tau") {
        if (param) throw ConfigError("spec '" + family + "' takes no parameter");
        return std::nullopt;
    }
    if (family == "rpower") {
        const u64 r = need_param(2);
        return PrimePowerFn([r](u64, int j) { return j % static_cast<int>(r) == 0 ? 1.0 : 0.0; });
    }
    if (family == "rfree") {
        const u64 r = need_param(2);
        return PrimePowerFn([r](u64, int j) { return static_cast<u64>(j) < r ? 1.0 : 0.0; });
    }
    if (family == "two-squares") {
        if (param) throw ConfigError("spec 'two-squares' takes no parameter");
        return PrimePowerFn([](u64 p, int j) {
            if (p % 4 == 3) return j % 2 == 0 ? 1.0 : 0.0;
            return 1.0;
        });
    }
    if (family == "smooth") {
        const u64 b = need_param(1);
        return PrimePowerFn([b](u64 p, int) { return p <= b ? 1.0 : 0.0; });
    }
    if (family == "rough") {
        const u64 b = need_param(1);
        return PrimePowerFn([b](u64 p, int) { return p >= b ? 1.0 : 0.0; });
    }
    throw ConfigError("unknown spec '" + std::string(text) + "'");
}

MultiplicativeSpec builtin_spec(std::string_view text) {
    auto indicator = indicator_of(text);
    const auto parsed = parse_name(text);
    if (parsed.family == "mu") {
        return MultiplicativeSpec("mu", [](u64, int j) { return j == 1 ? -1.0 : 0.0; }, true);
    }
    if (parsed.family == "tau") {
        return MultiplicativeSpec("tau", [](u64, int) { return 1.0; }, true);
    }
    return MultiplicativeSpec(std::string(text), difference_of(std::move(*indicator)), true,
                              parsed.param);
}

double eval_g(const MultiplicativeSpec& spec, const Factorization& fac) {
    double r = 1.0;
    for (const auto& [p, e] : fac.factors) {
        r *= spec.g_at(p, e);
        if (r == 0.0) break;
    }
    return r;
}

double eval_f(const MultiplicativeSpec& spec, const Factorization& fac) {
    double r = 1.0;
    for (const auto& [p, e] : fac.factors) {
        double local = 1.0;
        for (int i = 1; i <= e; ++i) local += spec.g_at(p, i);
        r *= local;
        if (r == 0.0) break;
    }
    return r;
}

i64 eval_g_exact(const MultiplicativeSpec& spec, const Factorization& fac) {
    if (!spec.integer_valued()) {
        throw ConfigError("eval_g_exact: spec '" + spec.name() + "' is not integer-valued");
    }
    i64 r = 1;
    for (const auto& [p, e] : fac.factors) {
        r *= static_cast<i64>(std::llround(spec.g_at(p, e)));
        if (r == 0) break;
    }
    return r;
}

i64 eval_f_exact(const MultiplicativeSpec& spec, const Factorization& fac) {
    if (!spec.integer_valued()) {
        throw ConfigError("eval_f_exact: spec '" + spec.name() + "' is not integer-valued");
    }
    i64 r = 1;
    for (const auto& [p, e] : fac.factors) {
        i64 local = 1;
        for (int i = 1; i <= e; ++i) local += static_cast<i64>(std::llround(spec.g_at(p, i)));
        r *= local;
        if (r == 0) break;
    }
    return r;
}

EulerFactor euler_factor(const MultiplicativeSpec& spec, u64 p, double tol) {
    if (!(tol > 0.0)) throw DomainError("euler_factor: tol must be positive");
    if (p < 2) throw DomainError("euler_factor: p must be prime");
    const double pd = static_cast<double>(p);
    const double ratio = pd / (pd - 1.0);
    EulerFactor out;
    out.p = p;
    double value = 1.0;
    double inv_pow = 1.0;  // p^{-J}
    int j = 0;
    while (inv_pow * ratio >= tol) {
        ++j;
        inv_pow /= pd;
        value += spec.g_at(p, j) * inv_pow;
    }
    out.value = value;
    out.terms = j;
    out.tail_bound = inv_pow / (pd - 1.0);
    return out;
}

}  // namespace gcdphi
