#pragma once

/**
 * @file multiplicative.hpp
 * @brief Bounded multiplicative weights g and their Dirichlet transforms f = 1 * g.
 *
 * A spec is determined by its values g(p^j) on prime powers; g(1) = 1. The
 * constructor samples |g(p^j)| on a grid and refuses anything above 1, and each
 * evaluation re-checks the bound.
 */

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "gcdphi/arith.hpp"

namespace gcdphi {

/// g(p^j) for prime p and j >= 1.
using PrimePowerFn = std::function<double(u64 p, int j)>;

class MultiplicativeSpec {
public:
    /// Throws ConfigError if the sampled bound |g| <= 1 fails, or if
    /// integer_valued is set and a sampled value is not an integer.
    MultiplicativeSpec(std::string name, PrimePowerFn g, bool integer_valued,
                       std::optional<u64> param = std::nullopt);

    const std::string& name() const { return name_; }
    bool integer_valued() const { return integer_valued_; }
    std::optional<u64> param() const { return param_; }

    /// g(p^j); j = 0 gives 1.
    double g_at(u64 p, int j) const;

private:
    std::string name_;
    PrimePowerFn g_;
    bool integer_valued_;
    std::optional<u64> param_;
};

/// Builds one of the named families:
///   mu, tau, rpower:r, rfree:r, two-squares, smooth:B, rough:B
/// r >= 2 and B >= 1 are required. Throws ConfigError otherwise.
MultiplicativeSpec builtin_spec(std::string_view name_with_params);

/// The 0/1 indicator behind an indicator family, or nullopt for mu and tau.
/// Used by tests and by the two-squares/rpower/rfree predictions.
std::optional<PrimePowerFn> indicator_of(std::string_view name_with_params);

double eval_g(const MultiplicativeSpec& spec, const Factorization& fac);
double eval_f(const MultiplicativeSpec& spec, const Factorization& fac);

/// Exact f(n) for integer-valued specs; throws ConfigError otherwise.
i64 eval_f_exact(const MultiplicativeSpec& spec, const Factorization& fac);
i64 eval_g_exact(const MultiplicativeSpec& spec, const Factorization& fac);

struct EulerFactor {
    u64 p = 0;
    double value = 0.0;
    double tail_bound = 0.0;
    int terms = 0;  // highest j included
};

/// sum_{j>=0} g(p^j) / p^j truncated at the least J with p^{-J} p/(p-1) < tol.
EulerFactor euler_factor(const MultiplicativeSpec& spec, u64 p, double tol);

}  // namespace gcdphi
