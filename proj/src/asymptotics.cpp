#include "gcdphi/asymptotics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "gcdphi/errors.hpp"
#include "gcdphi/numeric.hpp"
#include "gcdphi/quadrature.hpp"

namespace gcdphi {

namespace {

// Euler factors inside products are summed far past double precision.
constexpr double kEulerFactorTol = 1e-17;

// Quadrature integrands are cut where they drop below this.
constexpr double kIntegrandFloor = 1e-18;

// Finite-difference base steps for F^{(k)}(0).
constexpr long double kLaurentStep = 0.08L;
constexpr long double kLaurentCrossStep = 0.06L;

struct Logs {
    double l1, l2, l3;
};

Logs logs_of(double x) {
    if (x < kMinReportX) {
        throw DomainError("x = " + std::to_string(x) + " below minimum " +
                          std::to_string(kMinReportX));
    }
    return {log_iter(x, 1), log_iter(x, 2), log_iter(x, 3)};
}

Factorization factor_small(u64 d) { return factorize(d, sieve_primes(isqrt(d))); }

void require_squarefree(const Factorization& d, const char* what) {
    if (!is_squarefree(d)) {
        throw DomainError(std::string(what) + ": " + std::to_string(d.n) + " is not squarefree");
    }
}

Factorization checked_modulus(u64 d, double x, const char* what) {
    if (d <= 1 || d % 2 == 0) {
        throw DomainError(std::string(what) + ": d must be odd and > 1");
    }
    if (x <= std::numbers::e) throw DomainError(std::string(what) + ": need log x > 1");
    Factorization f = factor_small(d);
    require_squarefree(f, what);
    return f;
}

// Upper end of the integration range: past the peak and below the floor.
double truncation_point(const std::function<double(double)>& f, double start) {
    double v = start;
    while (!(std::abs(f(v)) < kIntegrandFloor && std::abs(f(v + 0.25)) <= std::abs(f(v)))) {
        v += 0.25;
        if (v > 1000.0) throw NumericError("truncation_point: integrand does not decay");
    }
    return v;
}

Certified integrate_coefficient(const std::function<double(double)>& f, int k,
                                const PredictionSettings& s) {
    if (k < 0 || k > 12) throw DomainError("coefficient index must be in [0, 12]");
    s.validate();
    const double upper = truncation_point(f, 0.5);
    // Both coefficients grow like k!; hold the error to tol relative to that.
    const double scale = std::max(1.0, std::tgamma(k + 1.0));
    const QuadratureResult q = integrate_adaptive(f, 0.0, upper, s.tol * scale);
    return {q.value, q.error + 4.0 * upper * kIntegrandFloor};
}

long double laurent_F_long(long double s) { return -std::expm1(std::lgamma(1.0L + s)) / s; }

// Fornberg's recursion: weights[j] such that sum_j weights[j] f(nodes[j])
// approximates f^{(order)}(0).
std::vector<long double> fd_weights(const std::vector<long double>& nodes, int order) {
    const std::size_t n = nodes.size();
    std::vector<std::vector<long double>> c(n, std::vector<long double>(order + 1, 0.0L));
    long double c1 = 1.0L;
    long double c4 = nodes[0];
    c[0][0] = 1.0L;
    for (std::size_t i = 1; i < n; ++i) {
        const int mn = std::min<int>(static_cast<int>(i), order);
        long double c2 = 1.0L;
        const long double c5 = c4;
        c4 = nodes[i];
        for (std::size_t j = 0; j < i; ++j) {
            const long double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int m = mn; m >= 1; --m) {
                    c[i][m] = c1 * (m * c[i - 1][m - 1] - c5 * c[i - 1][m]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int m = mn; m >= 1; --m) c[j][m] = (c4 * c[j][m] - m * c[j][m - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<long double> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = c[j][order];
    return w;
}

std::mutex g_prime_cache_mutex;
std::map<u64, std::unique_ptr<PrimeTable>> g_prime_cache;

}  // namespace

void PredictionSettings::validate() const {
    if (!(tol > 0.0 && tol <= 1e-3)) throw ConfigError("settings: tol must lie in (0, 1e-3]");
    if (prime_cutoff < 100'000) throw ConfigError("settings: prime_cutoff must be >= 1e5");
    if (K < 1 || K > 12) throw ConfigError("settings: K must lie in [1, 12]");
}

double log_iter(double x, int k) {
    if (k < 0) throw DomainError("log_iter: k must be >= 0");
    double v = x;
    for (int i = 0; i < k; ++i) {
        if (!(v > 0.0)) throw DomainError("log_iter: logarithm of nonpositive value");
        v = std::log(v);
    }
    if (!(v > 0.0)) {
        throw DomainError("log_iter: log_" + std::to_string(k) + "(" + std::to_string(x) +
                          ") is not positive");
    }
    return v;
}

const PrimeTable& primes_upto(u64 limit) {
    std::lock_guard lock(g_prime_cache_mutex);
    auto it = g_prime_cache.lower_bound(limit);
    if (it != g_prime_cache.end()) return *it->second;
    auto table = std::make_unique<PrimeTable>(sieve_primes(limit));
    auto& ref = *table;
    g_prime_cache.emplace(limit, std::move(table));
    return ref;
}

Certified q_g(const MultiplicativeSpec& spec, double x, const PredictionSettings& s) {
    s.validate();
    const Logs L = logs_of(x);
    const u64 cutoff = s.prime_cutoff;
    const PrimeTable& primes = primes_upto(cutoff);
    CompensatedSum sum;
    for (std::uint32_t p32 : primes) {
        if (p32 > cutoff) break;
        const double p = p32;
        const double gp = spec.g_at(p32, 1);
        if (gp == 0.0) continue;
        if (p <= L.l2) {
            sum += -gp / (p * std::exp(L.l2 / p));
        } else {
            sum += gp / p * -std::expm1(-L.l2 / p);
        }
    }
    const double P = static_cast<double>(cutoff);
    return {sum.value(), L.l2 / (P * std::log(P))};
}

double euler_product(const MultiplicativeSpec& spec, double x) {
    const Logs L = logs_of(x);
    double prod = 1.0;
    for (std::uint32_t p : primes_upto(1000)) {
        if (p > L.l2) break;
        prod *= euler_factor(spec, p, kEulerFactorTol).value;
    }
    if (L.l2 > 1000.0) throw CapacityError("euler_product: x too large");
    return prod;
}

double main_term(const MultiplicativeSpec& spec, double x, const PredictionSettings& s) {
    return x * euler_product(spec, x) * std::exp(q_g(spec, x, s).value);
}

double corollary_product(const MultiplicativeSpec& spec, double x) {
    return x * euler_product(spec, x);
}

double alpha(const Factorization& d) {
    require_squarefree(d, "alpha");
    double r = 1.0;
    for (const auto& pe : d.factors) r *= 1.0 - 1.0 / (static_cast<double>(pe.p) - 1.0);
    return r;
}

double beta(const Factorization& d) {
    require_squarefree(d, "beta");
    double r = 0.0;
    for (const auto& pe : d.factors) {
        const double p = static_cast<double>(pe.p);
        r += std::log(p) / p;
    }
    return r;
}

double alpha1(const Factorization& d) {
    require_squarefree(d, "alpha1");
    double r = 0.0;
    for (const auto& pe : d.factors) r += 1.0 / (static_cast<double>(pe.p) - 1.0);
    return r;
}

double predict_phi_coprime(u64 d, double x) {
    const Factorization f = checked_modulus(d, x, "predict_phi_coprime");
    return x / std::pow(std::log(x), alpha1(f));
}

double predict_phi_divisible(u64 d, double x) {
    const Factorization f = checked_modulus(d, x, "predict_phi_divisible");
    const double l1 = std::log(x);
    double r = x;
    for (const auto& pe : f.factors) {
        r *= 1.0 - std::pow(l1, -1.0 / (static_cast<double>(pe.p) - 1.0));
    }
    return r;
}

double phi_prediction_error_scale(u64 d, double x) {
    const Factorization f = checked_modulus(d, x, "phi_prediction_error_scale");
    const double p = static_cast<double>(smallest_prime(f).value());
    const double l2 = std::log(std::log(x));
    return std::log(p) / p + l2 / (p * p);
}

Certified a_coeff(int k, const PredictionSettings& s) {
    // t = e^v: dt / t = dv, so a_k = int_0^inf v^k exp(-e^v) dv.
    auto f = [k](double v) { return std::pow(v, k) * std::exp(-std::exp(v)); };
    return integrate_coefficient(f, k, s);
}

Certified b_coeff(int k, const PredictionSettings& s) {
    // t = e^v: b_k = int_0^inf (-v)^k (1 - exp(-e^{-v})) dv.
    auto f = [k](double v) { return std::pow(-v, k) * -std::expm1(-std::exp(-v)); };
    return integrate_coefficient(f, k, s);
}

double laurent_F(double s) {
    if (s == 0.0) throw DomainError("laurent_F: s = 0 is a removable singularity");
    if (s <= -1.0) throw DomainError("laurent_F: s must exceed -1");
    return static_cast<double>(laurent_F_long(s));
}

Certified gamma_laurent_F(int k, const PredictionSettings& s) {
    if (k < 0 || k > 8) throw DomainError("gamma_laurent_F: k must be in [0, 8]");
    s.validate();
    // Stencil: 2m points at +-(j - 1/2) h, never touching s = 0. Symmetry makes
    // the error an even series starting at h^4.
    const int m = k / 2 + 2;
    std::vector<long double> unit_nodes;
    for (int j = -m + 1; j <= m; ++j) unit_nodes.push_back(j - 0.5L);
    const std::vector<long double> w = fd_weights(unit_nodes, k);

    auto extrapolate = [&](long double h0) {
        constexpr int kLevels = 4;
        std::array<std::array<long double, kLevels>, kLevels> table{};
        for (int i = 0; i < kLevels; ++i) {
            const long double h = h0 / std::pow(2.0L, i);
            long double acc = 0.0L;
            for (std::size_t j = 0; j < unit_nodes.size(); ++j) {
                acc += w[j] * laurent_F_long(unit_nodes[j] * h);
            }
            table[i][0] = acc / std::pow(h, k);
            for (int j = 1; j <= i; ++j) {
                const long double factor = std::pow(2.0L, 4 + 2 * (j - 1)) - 1.0L;
                table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / factor;
            }
        }
        return std::pair{table[kLevels - 1][kLevels - 1],
                         std::abs(table[kLevels - 1][kLevels - 1] - table[kLevels - 1][kLevels - 2])};
    };
    // The base step balances truncation (span of the stencil against the pole
    // at s = -1) with rounding in the k-th difference. A second base step gives
    // an independent estimate that also sees the rounding noise.
    const auto [best, column_gap] = extrapolate(kLaurentStep);
    const auto [other, other_gap] = extrapolate(kLaurentCrossStep);
    const double error = static_cast<double>(std::max({column_gap, other_gap, std::abs(best - other)}));
    const double limit = std::max(s.tol, 1e-3) * std::max(1.0, std::abs(static_cast<double>(best)));
    if (error > limit) {
        throw NumericError("gamma_laurent_F: extrapolation for k = " + std::to_string(k) +
                           " disagrees by " + std::to_string(error));
    }
    return {static_cast<double>(best), error};
}

double SeriesExpansion::operator()(double u) const {
    double r = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * u + *it;
    return r;
}

SeriesExpansion series_exp(const SeriesExpansion& input) {
    if (input.K < 0 || input.coeffs.size() != static_cast<std::size_t>(input.K) + 1) {
        throw PreconditionError("series_exp: coeffs must hold K + 1 entries");
    }
    if (input.coeffs[0] != 0.0) throw PreconditionError("series_exp: constant term must be 0");
    SeriesExpansion out;
    out.K = input.K;
    out.coeffs.assign(input.coeffs.size(), 0.0);
    out.coeffs[0] = 1.0;
    for (int n = 1; n <= input.K; ++n) {
        double acc = 0.0;
        for (int j = 1; j <= n; ++j) acc += j * input.coeffs[j] * out.coeffs[n - j];
        out.coeffs[n] = acc / n;
    }
    return out;
}

double euler_gamma() {
    // H_N - log N - 1/(2N) + sum_j B_{2j} / (2j N^{2j}) (Euler-Maclaurin).
    constexpr int N = 1000;
    long double h = 0.0L;
    for (int n = N; n >= 1; --n) h += 1.0L / n;
    const long double n = N;
    const long double n2 = n * n;
    const long double g = h - std::log(n) - 1.0L / (2 * n) + 1.0L / (12 * n2) -
                          1.0L / (120 * n2 * n2) + 1.0L / (252 * n2 * n2 * n2);
    return static_cast<double>(g);
}

Certified mertens_constant(const PredictionSettings& s) {
    s.validate();
    const u64 cutoff = s.prime_cutoff;
    CompensatedSum sum;
    for (std::uint32_t p32 : primes_upto(cutoff)) {
        if (p32 > cutoff) break;
        const double inv = 1.0 / static_cast<double>(p32);
        sum += std::log1p(-inv) + inv;
    }
    return {euler_gamma() + sum.value(), 1.0 / (2.0 * static_cast<double>(cutoff))};
}

Certified zeta(int r, const PredictionSettings& s) {
    if (r < 2) throw DomainError("zeta: r must be >= 2");
    s.validate();
    constexpr int N = 50;
    // B_2 .. B_14
    constexpr std::array<long double, 7> bernoulli = {1.0L / 6,     -1.0L / 30, 1.0L / 42,
                                                      -1.0L / 30,   5.0L / 66,  -691.0L / 2730,
                                                      7.0L / 6};
    long double sum = 0.0L;
    for (int n = N - 1; n >= 1; --n) sum += std::pow(static_cast<long double>(n), -r);
    const long double bigN = N;
    sum += std::pow(bigN, 1 - r) / (r - 1) + std::pow(bigN, -r) / 2;

    // Tail corrections B_{2j}/(2j)! * r (r+1) ... (r+2j-2) * N^{-r-2j+1}.
    long double rising = r;  // r (r+1) ... (r+2j-2)
    long double fact = 2.0L;  // (2j)!
    long double last = 0.0L;
    for (int j = 1; j <= 7; ++j) {
        const long double term = bernoulli[j - 1] / fact * rising * std::pow(bigN, -r - 2 * j + 1);
        if (j < 7) {
            sum += term;
        } else {
            last = term;
        }
        rising *= (r + 2 * j - 1) * static_cast<long double>(r + 2 * j);
        fact *= (2 * j + 1) * static_cast<long double>(2 * j + 2);
    }
    const double bound = std::max(static_cast<double>(std::abs(last)), 1e-18);
    if (bound > 1e-12) throw NumericError("zeta: remainder above 1e-12");
    return {static_cast<double>(sum), bound};
}

Certified landau_ramanujan(const PredictionSettings& s) {
    s.validate();
    const u64 cutoff = s.prime_cutoff;
    CompensatedSum log_prod;
    for (std::uint32_t p32 : primes_upto(cutoff)) {
        if (p32 > cutoff) break;
        if (p32 % 4 != 3) continue;
        const double p = p32;
        log_prod += -std::log1p(-1.0 / (p * p));
    }
    const double b = std::sqrt(0.5 * std::exp(log_prod.value()));
    // Dropped factor: exp(sum_{p > P, p = 3 mod 4} p^{-2} / 2) with the sum
    // about 1 / (2 P log P); doubled for margin.
    const double P = static_cast<double>(cutoff);
    return {b, b / (2.0 * P * std::log(P))};
}

std::string family_spec(std::string_view family) {
    if (family == "erdos") return "mu";
    if (family == "divisor-avg") return "tau";
    if (family == "two-squares") return "two-squares";
    if (family.starts_with("rpower:") || family.starts_with("rfree:")) {
        builtin_spec(family);  // validates the parameter
        return std::string(family);
    }
    throw ConfigError("unknown prediction family '" + std::string(family) + "'");
}

std::string spec_family(std::string_view spec_name) {
    if (spec_name == "mu") return "erdos";
    if (spec_name == "tau") return "divisor-avg";
    if (spec_name == "two-squares" || spec_name.starts_with("rpower:") ||
        spec_name.starts_with("rfree:")) {
        return std::string(spec_name);
    }
    return {};
}

Prediction prediction(std::string_view family, double x, const PredictionSettings& s) {
    s.validate();
    const MultiplicativeSpec spec = builtin_spec(family_spec(family));
    const Logs L = logs_of(x);
    const double eg = std::exp(euler_gamma());

    Prediction out;
    out.family = std::string(family);
    out.x = x;
    out.value = main_term(spec, x, s);
    out.u = 1.0 / L.l3;

    // Exponent series sum_{k>=1} e_k u^k with e_{k+1} = weight * (a_k - b_k).
    double weight = 0.0;
    if (family == "erdos") {
        out.leading = x / (eg * L.l3);
        weight = 1.0;
    } else if (family == "divisor-avg") {
        out.leading = eg * x * L.l3;
        weight = -1.0;
    } else if (family == "two-squares") {
        const double b = landau_ramanujan(s).value;
        out.leading = std::sqrt(std::numbers::pi) * b * x / std::sqrt(eg * L.l3);
        weight = 0.5;
    } else {
        const int r = static_cast<int>(*spec.param());
        const double z = zeta(r, s).value;
        if (family.starts_with("rpower:")) {
            out.leading = z * x / (eg * L.l3);
            weight = 1.0;
        } else {
            out.leading = x / z;
        }
    }

    SeriesExpansion exponent;
    exponent.K = s.K;
    exponent.coeffs.assign(static_cast<std::size_t>(s.K) + 1, 0.0);
    if (weight != 0.0) {
        for (int k = 0; k < s.K; ++k) {
            exponent.coeffs[k + 1] = weight * (a_coeff(k, s).value - b_coeff(k, s).value);
        }
    }
    out.expansion = series_exp(exponent);
    out.expansion_value = out.leading * out.expansion(out.u);
    return out;
}

}  // namespace gcdphi
