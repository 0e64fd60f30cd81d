#pragma once

/**
 * @file scan.hpp
 * @brief Exact counting over n <= x: S_g(x) by two summation orders, congruence
 * sums A_d(x), phi-divisibility counts and gcd(n, phi(n)) histograms.
 *
 * Scans stream PhiBlocks of a configurable size. Segments may be processed by
 * several workers; partial results are always reduced in segment order, so the
 * output does not depend on the worker count.
 */

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>

#include "gcdphi/arith.hpp"
#include "gcdphi/multiplicative.hpp"

namespace gcdphi {

struct ScanOptions {
    u64 segment = kDefaultSegment;
    unsigned threads = 1;
};

enum class ScanMode { direct, inversion };

struct ScanResult {
    u64 x = 0;
    std::string spec_name;
    /// Exact integer for integer-valued specs, real otherwise.
    std::variant<i64, double> value;
    ScanMode mode = ScanMode::direct;
    double runtime_ms = 0.0;

    bool exact() const { return std::holds_alternative<i64>(value); }
    double as_double() const;
};

/// Largest x accepted by s_inversion.
inline constexpr u64 kMaxInversionX = 100'000;

/// Visits every phi value for n in [1, x] in ascending order, one block at a
/// time. The callback receives the block; it must not retain it.
void for_each_phi_block(u64 x, u64 segment, const std::function<void(const PhiBlock&)>& fn);

/// phi(n) for n = 0..x (index 0 holds 0).
std::vector<u64> phi_table(u64 x);

/// A_d(x) = #{n <= x : d | n and d | phi(n)}.
u64 congruence_sum(u64 d, u64 x);
/// Same, with phi supplied as a table indexed by n (size > x).
u64 congruence_sum(u64 d, u64 x, std::span<const u64> phi);

/// S_g(x) = sum_{n <= x} f(gcd(n, phi(n))).
ScanResult s_direct(const MultiplicativeSpec& spec, u64 x, const ScanOptions& opts = {});

/// S_g(x) = sum_{d <= x} g(d) A_d(x). Requires x <= kMaxInversionX.
ScanResult s_inversion(const MultiplicativeSpec& spec, u64 x);

/// #{n <= x : d | phi(n)}
u64 count_phi_divisible(u64 d, u64 x, const ScanOptions& opts = {});
/// #{n <= x : gcd(phi(n), d) = 1}
u64 count_phi_coprime(u64 d, u64 x, const ScanOptions& opts = {});
/// #{n <= x : p | phi(n)}; p need not be below x (the count is then 0).
u64 count_p_divides_phi(u64 p, u64 x, const ScanOptions& opts = {});

struct GcdHistogram {
    u64 x = 0;
    u64 cap = 0;
    std::map<u64, u64> counts;  // gcd value -> count, values <= cap only
    u64 overflow = 0;           // count with gcd > cap

    u64 total() const;
};

inline constexpr u64 kDefaultHistogramCap = 10'000;

GcdHistogram gcd_histogram(u64 x, u64 cap = kDefaultHistogramCap, const ScanOptions& opts = {});

/// sum_{p <= x, p = a mod m} 1/p. Requires a >= 1, m >= 1, gcd(a, m) = 1.
double prime_reciprocal_sum(u64 x, u64 a, u64 m);

}  // namespace gcdphi
