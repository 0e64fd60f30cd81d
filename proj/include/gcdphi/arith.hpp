#pragma once

/**
 * @file arith.hpp
 * @brief Exact integer substrate: primes, segmented Euler phi, factorization.
 *
 * Every integer handled here is at most kMaxN = 2^40, so products such as
 * phi(m) * phi(n) for coprime m, n in range and the 128-bit intermediates in
 * modular multiplication never overflow.
 */

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace gcdphi {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Largest integer accepted at any API boundary.
inline constexpr u64 kMaxN = u64{1} << 40;

/// Default ceiling for sieve_primes.
inline constexpr u64 kDefaultPrimeLimit = 1'000'000'000;

/// Default number of integers per PhiBlock.
inline constexpr u64 kDefaultSegment = u64{1} << 20;

u64 isqrt(u64 n);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(u64 n);

class PrimeTable {
public:
    PrimeTable() = default;

    u64 limit() const { return limit_; }
    std::span<const std::uint32_t> primes() const { return primes_; }
    std::size_t size() const { return primes_.size(); }
    std::uint32_t operator[](std::size_t i) const { return primes_[i]; }
    auto begin() const { return primes_.begin(); }
    auto end() const { return primes_.end(); }

    /// Number of listed primes <= x (x may exceed limit; result then saturates).
    std::size_t count_upto(u64 x) const;

private:
    friend PrimeTable sieve_primes(u64 limit, u64 max_limit);
    u64 limit_ = 0;
    std::vector<std::uint32_t> primes_;
};

/// All primes <= limit via a segmented sieve of Eratosthenes.
/// Throws CapacityError when limit > max_limit.
PrimeTable sieve_primes(u64 limit, u64 max_limit = kDefaultPrimeLimit);

struct PhiBlock {
    u64 lo = 0;  // inclusive
    u64 hi = 0;  // exclusive
    std::vector<u64> values;

    u64 at(u64 n) const { return values[n - lo]; }
};

/// phi(n) for n in [lo, hi). Requires 1 <= lo < hi <= kMaxN + 1 and
/// primes.limit() >= isqrt(hi - 1).
PhiBlock phi_block(u64 lo, u64 hi, const PrimeTable& primes);

/// Same as phi_block but reuses the caller's buffers.
void phi_block_into(PhiBlock& out, std::vector<u64>& scratch, u64 lo, u64 hi,
                    const PrimeTable& primes);

struct PrimePower {
    u64 p;
    int e;
    bool operator==(const PrimePower&) const = default;
};

/// Either a finite integer or +infinity; used for the smallest prime factor,
/// where p(1) is infinite by convention.
class ExtendedInt {
public:
    static ExtendedInt infinity() { return ExtendedInt(); }
    static ExtendedInt finite(u64 v) { return ExtendedInt(v); }

    bool is_infinite() const { return infinite_; }
    /// Throws DomainError on infinity.
    u64 value() const;

    bool operator==(const ExtendedInt&) const = default;
    bool operator==(u64 v) const { return !infinite_ && value_ == v; }
    std::partial_ordering operator<=>(double z) const;

private:
    ExtendedInt() : infinite_(true) {}
    explicit ExtendedInt(u64 v) : value_(v), infinite_(false) {}
    u64 value_ = 0;
    bool infinite_;
};

struct Factorization {
    u64 n = 1;
    std::vector<PrimePower> factors;  // ascending primes, exponents >= 1
};

/// Exact factorization by trial division; requires primes.limit() >= isqrt(n).
Factorization factorize(u64 n, const PrimeTable& primes);

/// Factorization from raw factors; validates primality order and exponents.
Factorization make_factorization(std::vector<PrimePower> factors);

/// gcd(a, b); gcd(0, 0) throws DomainError.
u64 gcd_pair(u64 a, u64 b);

/// Binary gcd without the zero check, for hot loops.
inline u64 gcd_fast(u64 a, u64 b) {
    if (a == 0) return b;
    if (b == 0) return a;
    int shift = __builtin_ctzll(a | b);
    a >>= __builtin_ctzll(a);
    do {
        b >>= __builtin_ctzll(b);
        if (a > b) std::swap(a, b);
        b -= a;
    } while (b != 0);
    return a << shift;
}

u64 tau(const Factorization& f);
int omega(const Factorization& f);
/// P(n); P(1) = 1.
u64 largest_prime(const Factorization& f);
/// p(n); p(1) = infinity.
ExtendedInt smallest_prime(const Factorization& f);
bool is_squarefree(const Factorization& f);

/// phi(n) from its factorization.
u64 phi_of(const Factorization& f);

}  // namespace gcdphi
