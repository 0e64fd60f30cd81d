// Runtime self-checks behind `gcdphi verify`. Each check compares the library
// against a slow, independent computation.

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "gcdphi/errors.hpp"
#include "gcdphi/multiplicative.hpp"
#include "gcdphi/report.hpp"

namespace gcdphi {

namespace {

u64 trial_phi(u64 n) {
    u64 result = n;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(12);
    s << v;
    return s.str();
}

void add(VerifyReport& r, std::string name, bool ok, std::string detail) {
    r.checks.push_back({std::move(name), ok, std::move(detail)});
}

void identities(VerifyReport& r, const RunConfig&) {
    for (const char* name : {"mu", "tau", "two-squares", "rpower:2", "rfree:2"}) {
        const MultiplicativeSpec spec = builtin_spec(name);
        for (u64 x : {u64{1000}, u64{10000}}) {
            const ScanResult d = s_direct(spec, x);
            const ScanResult i = s_inversion(spec, x);
            const bool ok = d.exact() && i.exact() && d.value == i.value;
            add(r, std::string("inversion ") + name + " x=" + std::to_string(x), ok,
                "direct " + fmt(d.as_double()) + " inversion " + fmt(i.as_double()));
        }
    }
    const GcdHistogram h = gcd_histogram(1000);
    add(r, "histogram partition x=1000", h.total() == 1000,
        "total " + std::to_string(h.total()));
}

void sieve(VerifyReport& r, const RunConfig& config) {
    {
        const PrimeTable primes = sieve_primes(10'000);
        std::vector<u64> trial;
        for (u64 n = 2; n <= 10'000; ++n) {
            if (trial_phi(n) == n - 1) trial.push_back(n);
        }
        const bool ok = trial.size() == primes.size() &&
                        std::equal(trial.begin(), trial.end(), primes.begin());
        add(r, "primes <= 1e4 vs trial division", ok, std::to_string(primes.size()) + " primes");
    }
    {
        const std::vector<u64> phi = phi_table(100'000);
        u64 bad = 0;
        for (u64 n = 1; n <= 100'000; ++n) bad += phi[n] != trial_phi(n);
        add(r, "phi n <= 1e5 vs trial division", bad == 0, std::to_string(bad) + " mismatches");
    }
    std::mt19937_64 rng(config.seed);
    {
        const u64 lo = 1'000'000'000;
        const PhiBlock block = phi_block(lo, lo + 1'000'000, sieve_primes(isqrt(lo + 1'000'000)));
        std::uniform_int_distribution<u64> pick(lo, lo + 999'999);
        u64 bad = 0;
        for (int i = 0; i < 1000; ++i) {
            const u64 n = pick(rng);
            bad += block.at(n) != trial_phi(n);
        }
        add(r, "phi 1e3 random n in [1e9, 1e9+1e6)", bad == 0, std::to_string(bad) + " mismatches");
    }
    {
        const std::vector<u64> phi = phi_table(100'000);
        const PrimeTable primes = sieve_primes(isqrt(u64{100'000} * 100'000));
        std::uniform_int_distribution<u64> pick(1, 100'000);
        u64 bad = 0;
        for (int i = 0; i < 10'000; ++i) {
            const u64 a = pick(rng);
            const u64 b = pick(rng);
            bad += phi_of(factorize(a * b, primes)) % phi[a] != 0;
        }
        add(r, "phi(a) | phi(ab) for 1e4 random pairs", bad == 0, std::to_string(bad) + " failures");
    }
}

void coefficients(VerifyReport& r, const RunConfig& config) {
    const PredictionSettings s = config.settings();
    const double gamma = euler_gamma();
    const double a0 = a_coeff(0, s).value;
    const double b0 = b_coeff(0, s).value;
    add(r, "b_0 - a_0 = gamma", std::abs(b0 - a0 - gamma) <= 1e-6,
        "gap " + fmt(std::abs(b0 - a0 - gamma)));

    // E_1(1) = -gamma + sum_{n>=1} (-1)^{n+1} / (n n!)
    double e1 = -gamma;
    double fact = 1.0;
    for (int n = 1; n <= 30; ++n) {
        fact *= n;
        e1 += ((n % 2) ? 1.0 : -1.0) / (n * fact);
    }
    add(r, "a_0 = E_1(1)", std::abs(a0 - e1) <= 1e-8, "gap " + fmt(std::abs(a0 - e1)));

    SeriesExpansion exponent;
    exponent.K = 4;
    exponent.coeffs = {0.0};
    for (int k = 1; k <= 4; ++k) {
        const double bk = b_coeff(k, s).value;
        const double ak = a_coeff(k, s).value;
        const double fk = gamma_laurent_F(k, s).value;
        add(r, "b_" + std::to_string(k) + " - a_" + std::to_string(k) + " = F^(k)(0)",
            std::abs(bk - ak - fk) <= 1e-5, "gap " + fmt(std::abs(bk - ak - fk)));
        exponent.coeffs.push_back(bk - ak);
    }
    // exp(input) - poly must equal the tail of the untruncated exponential.
    const double u = 0.1;
    SeriesExpansion wide = exponent;
    wide.K = 30;
    wide.coeffs.resize(31, 0.0);
    const SeriesExpansion full = series_exp(wide);
    double tail = 0.0;
    for (int n = 30; n > 4; --n) tail += full.coeffs[n] * std::pow(u, n);
    const double remainder = std::exp(exponent(u)) - series_exp(exponent)(u);
    const double gap = std::abs(remainder - tail);
    add(r, "series_exp remainder at u = 0.1 equals exact tail", gap <= 1e-12,
        "remainder " + fmt(remainder) + " gap " + fmt(gap));
}

void predictions(VerifyReport& r, const RunConfig& config) {
    const PredictionSettings s = config.settings();
    for (const char* name : {"mu", "tau", "two-squares"}) {
        const MultiplicativeSpec spec = builtin_spec(name);
        const double x = 1e8;
        const double lhs = main_term(spec, x, s);
        const double rhs = corollary_product(spec, x) * std::exp(q_g(spec, x, s).value);
        add(r, std::string("main_term wiring ") + name, std::abs(lhs / rhs - 1.0) <= 1e-12,
            fmt(lhs));
    }
    const double rfree = prediction("rfree:2", 1e6, s).expansion_value;
    const double expect = 6e6 / (std::numbers::pi * std::numbers::pi);
    add(r, "rfree:2 prediction = 6x/pi^2", std::abs(rfree / expect - 1.0) <= 1e-10, fmt(rfree));

    for (u64 d : {u64{5}, u64{7}, u64{35}}) {
        const u64 x = 1'000'000;
        const double ratio = static_cast<double>(count_phi_coprime(d, x)) /
                             predict_phi_coprime(d, static_cast<double>(x));
        add(r, "phi coprime ratio d=" + std::to_string(d) + " x=1e6",
            ratio >= 0.5 && ratio <= 1.5, "ratio " + fmt(ratio));
    }
}

}  // namespace

VerifyReport run_verify(std::string_view suite, const RunConfig& config) {
    const bool all = suite == "all";
    if (!all && suite != "identities" && suite != "sieve" && suite != "coefficients" &&
        suite != "predictions") {
        throw ConfigError("unknown verify suite '" + std::string(suite) + "'");
    }
    VerifyReport report;
    if (all || suite == "identities") identities(report, config);
    if (all || suite == "sieve") sieve(report, config);
    if (all || suite == "coefficients") coefficients(report, config);
    if (all || suite == "predictions") predictions(report, config);
    return report;
}

}  // namespace gcdphi
