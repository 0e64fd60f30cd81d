#pragma once

/**
 * @file asymptotics.hpp
 * @brief Prediction side: the Euler product main term for S_g(x), its product-only
 * leading form, phi-divisibility predictions, the expansion coefficients a_k
 * and b_k, the Gamma-Laurent cross-check, series exponentiation, and the
 * constants (gamma, Mertens, zeta(r), Landau-Ramanujan) the closed forms need.
 *
 * Notation: L1 = log x, L2 = log log x, L3 = log log log x, u = 1 / L3.
 * Infinite prime sums and products are cut at PredictionSettings::prime_cutoff
 * and always return the bound on what was dropped.
 */

#include <string>
#include <string_view>
#include <vector>

#include "gcdphi/arith.hpp"
#include "gcdphi/multiplicative.hpp"

namespace gcdphi {

struct PredictionSettings {
    double tol = 1e-12;
    u64 prime_cutoff = 10'000'000;
    int K = 4;

    /// Throws ConfigError unless tol in (0, 1e-3], prime_cutoff >= 1e5, K >= 1.
    void validate() const;
};

/// A value together with a bound on its truncation or quadrature error.
struct Certified {
    double value = 0.0;
    double error_bound = 0.0;
};

/// log_k x (k-fold natural log). Every intermediate and the result must be
/// positive; otherwise DomainError. log_iter(x, 0) = x.
double log_iter(double x, int k);

/// Smallest x accepted by the prediction formulas (L3 > 0 needs x > e^e).
inline constexpr double kMinFormulaX = 16.0;
/// Smallest x accepted by main_term and friends.
inline constexpr double kMinReportX = 100.0;

/// Shared, lazily built prime tables. Thread-safe.
const PrimeTable& primes_upto(u64 limit);

/// Q_g(x) = -sum_{p<=L2} g(p) / (p L1^{1/p}) + sum_{p>L2} (g(p)/p)(1 - L1^{-1/p}),
/// second sum cut at prime_cutoff P; error_bound = L2 / (P log P).
Certified q_g(const MultiplicativeSpec& spec, double x, const PredictionSettings& s);

/// prod_{p <= L2} sum_j g(p^j) / p^j
double euler_product(const MultiplicativeSpec& spec, double x);

/// x * euler_product * exp(Q_g(x))
double main_term(const MultiplicativeSpec& spec, double x, const PredictionSettings& s);

/// x * euler_product
double corollary_product(const MultiplicativeSpec& spec, double x);

/// Inputs must be squarefree (DomainError otherwise); alpha(1) = 1.
double alpha(const Factorization& d);
double beta(const Factorization& d);
double alpha1(const Factorization& d);

/// x / L1^{alpha1(d)}. d odd, squarefree, > 1.
double predict_phi_coprime(u64 d, double x);
/// x * prod_{p | d} (1 - L1^{-1/(p-1)}). d odd, squarefree, > 1.
double predict_phi_divisible(u64 d, double x);
/// log p(d) / p(d) + L2 / p(d)^2: the size of the relative error term.
double phi_prediction_error_scale(u64 d, double x);

/// a_k = int_1^inf (log t)^k / (t e^t) dt, 0 <= k <= 12.
Certified a_coeff(int k, const PredictionSettings& s);
/// b_k = int_1^inf (-log t)^k (1 - e^{-1/t}) dt / t, 0 <= k <= 12.
Certified b_coeff(int k, const PredictionSettings& s);

/// F(s) = 1/s - Gamma(s), s != 0.
double laurent_F(double s);
/// F^{(k)}(0) by symmetric finite differences plus Richardson extrapolation,
/// 0 <= k <= 8. error_bound is the disagreement between two independent
/// extrapolations; NumericError if it exceeds max(tol, 1e-3) * max(1, |value|).
Certified gamma_laurent_F(int k, const PredictionSettings& s);

struct SeriesExpansion {
    int K = 0;
    std::vector<double> coeffs;  // c_0 .. c_K in powers of u = 1 / L3

    double operator()(double u) const;
};

/// exp of a power series with zero constant term, truncated at degree K.
SeriesExpansion series_exp(const SeriesExpansion& input);

double euler_gamma();
/// gamma + sum_{p <= P} [log(1 - 1/p) + 1/p]; error_bound = 1 / (2P).
Certified mertens_constant(const PredictionSettings& s);
/// Euler-Maclaurin-accelerated series; error_bound below 1e-12.
Certified zeta(int r, const PredictionSettings& s);
/// sqrt((1/2) prod_{p = 3 mod 4, p <= P} (1 - p^{-2})^{-1}).
Certified landau_ramanujan(const PredictionSettings& s);

struct Prediction {
    std::string family;
    double x = 0.0;
    double value = 0.0;    // main term of the family's spec
    double leading = 0.0;  // closed-form leading factor, no series correction
    SeriesExpansion expansion;
    double u = 0.0;  // 1 / L3
    double expansion_value = 0.0;  // leading * expansion(u)
};

/// Families: erdos, rpower:r, rfree:r, two-squares, divisor-avg.
Prediction prediction(std::string_view family, double x, const PredictionSettings& s);

/// The builtin spec name a family is computed from (erdos -> mu, ...).
std::string family_spec(std::string_view family);
/// Inverse of family_spec; empty when the spec has no closed-form family.
std::string spec_family(std::string_view spec_name);

}  // namespace gcdphi
