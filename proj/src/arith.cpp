#include "gcdphi/arith.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gcdphi/errors.hpp"

namespace gcdphi {

namespace {

u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

void check_range(u64 n, const char* what) {
    if (n > kMaxN) {
        throw CapacityError(std::string(what) + ": " + std::to_string(n) +
                            " exceeds supported range 2^40");
    }
}

}  // namespace

u64 isqrt(u64 n) {
    constexpr u64 kMaxRoot = 0xFFFFFFFFULL;  // (kMaxRoot + 1)^2 overflows
    u64 r = std::min<u64>(static_cast<u64>(std::sqrt(static_cast<double>(n))), kMaxRoot);
    while (r > 0 && r * r > n) --r;
    while (r < kMaxRoot && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These twelve bases are a deterministic witness set below 3.3e24.
    for (u64 a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::size_t PrimeTable::count_upto(u64 x) const {
    auto it = std::upper_bound(primes_.begin(), primes_.end(), x,
                               [](u64 v, std::uint32_t p) { return v < p; });
    return static_cast<std::size_t>(it - primes_.begin());
}

PrimeTable sieve_primes(u64 limit, u64 max_limit) {
    if (limit > max_limit) {
        throw CapacityError("sieve_primes: limit " + std::to_string(limit) +
                            " above configured maximum " + std::to_string(max_limit));
    }
    if (limit > 0xFFFFFFFFull) {
        throw CapacityError("sieve_primes: limit must fit in 32 bits");
    }
    PrimeTable table;
    table.limit_ = limit;
    if (limit < 2) return table;

    const u64 root = isqrt(limit);
    std::vector<char> small(root + 1, 1);
    std::vector<std::uint32_t> base;
    for (u64 i = 2; i <= root; ++i) {
        if (!small[i]) continue;
        base.push_back(static_cast<std::uint32_t>(i));
        for (u64 j = i * i; j <= root; j += i) small[j] = 0;
    }

    // Rough pi(x) estimate to avoid repeated reallocation.
    const double lx = std::log(static_cast<double>(std::max<u64>(limit, 3)));
    table.primes_.reserve(static_cast<std::size_t>(1.3 * limit / lx) + 16);

    constexpr u64 kSeg = u64{1} << 18;
    std::vector<char> seg(kSeg);
    for (u64 lo = 2; lo <= limit; lo += kSeg) {
        const u64 hi = std::min(limit + 1, lo + kSeg);  // exclusive
        std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(hi - lo), 1);
        for (std::uint32_t p : base) {
            const u64 pp = u64{p} * p;
            if (pp >= hi) break;
            u64 start = std::max(pp, (lo + p - 1) / p * p);
            for (u64 j = start; j < hi; j += p) seg[j - lo] = 0;
        }
        for (u64 n = lo; n < hi; ++n) {
            if (seg[n - lo]) table.primes_.push_back(static_cast<std::uint32_t>(n));
        }
    }
    return table;
}

void phi_block_into(PhiBlock& out, std::vector<u64>& rem, u64 lo, u64 hi,
                    const PrimeTable& primes) {
    if (lo < 1 || lo >= hi) {
        throw PreconditionError("phi_block: need 1 <= lo < hi");
    }
    check_range(hi - 1, "phi_block");
    const u64 root = isqrt(hi - 1);
    if (primes.limit() < root) {
        throw PreconditionError("phi_block: prime table limit " + std::to_string(primes.limit()) +
                                " below isqrt(hi - 1) = " + std::to_string(root));
    }
    const std::size_t len = static_cast<std::size_t>(hi - lo);
    out.lo = lo;
    out.hi = hi;
    out.values.resize(len);
    rem.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
        out.values[i] = lo + i;
        rem[i] = lo + i;
    }
    for (std::uint32_t p32 : primes) {
        const u64 p = p32;
        if (p > root) break;
        for (u64 m = (lo + p - 1) / p * p; m < hi; m += p) {
            const std::size_t i = static_cast<std::size_t>(m - lo);
            out.values[i] -= out.values[i] / p;
            u64 r = rem[i] / p;
            while (r % p == 0) r /= p;
            rem[i] = r;
        }
    }
    // At most one prime factor exceeds sqrt(hi - 1); it is what remains.
    for (std::size_t i = 0; i < len; ++i) {
        if (rem[i] > 1) out.values[i] -= out.values[i] / rem[i];
    }
}

PhiBlock phi_block(u64 lo, u64 hi, const PrimeTable& primes) {
    PhiBlock block;
    std::vector<u64> rem;
    phi_block_into(block, rem, lo, hi, primes);
    return block;
}

u64 ExtendedInt::value() const {
    if (infinite_) throw DomainError("ExtendedInt: value of infinity");
    return value_;
}

std::partial_ordering ExtendedInt::operator<=>(double z) const {
    if (infinite_) return std::partial_ordering::greater;
    return static_cast<double>(value_) <=> z;
}

Factorization factorize(u64 n, const PrimeTable& primes) {
    if (n < 1) throw PreconditionError("factorize: n must be >= 1");
    check_range(n, "factorize");
    Factorization f;
    f.n = n;
    if (primes.limit() < isqrt(n)) {
        throw PreconditionError("factorize: prime table too short for " + std::to_string(n));
    }
    u64 m = n;
    for (std::uint32_t p32 : primes) {
        const u64 p = p32;
        if (p * p > m) break;
        if (m % p != 0) continue;
        int e = 0;
        do {
            m /= p;
            ++e;
        } while (m % p == 0);
        f.factors.push_back({p, e});
    }
    if (m > 1) f.factors.push_back({m, 1});
    return f;
}

Factorization make_factorization(std::vector<PrimePower> factors) {
    Factorization f;
    u64 n = 1;
    u64 prev = 0;
    for (const auto& [p, e] : factors) {
        if (p <= prev || !is_prime(p) || e < 1) {
            throw PreconditionError("make_factorization: factors must be ascending primes with e >= 1");
        }
        for (int i = 0; i < e; ++i) {
            if (n > kMaxN / p) throw CapacityError("make_factorization: product exceeds 2^40");
            n *= p;
        }
        prev = p;
    }
    f.n = n;
    f.factors = std::move(factors);
    return f;
}

u64 gcd_pair(u64 a, u64 b) {
    if (a == 0 && b == 0) throw DomainError("gcd_pair: gcd(0, 0) is undefined");
    return gcd_fast(a, b);
}

u64 tau(const Factorization& f) {
    u64 t = 1;
    for (const auto& pe : f.factors) t *= static_cast<u64>(pe.e + 1);
    return t;
}

int omega(const Factorization& f) { return static_cast<int>(f.factors.size()); }

u64 largest_prime(const Factorization& f) {
    return f.factors.empty() ? 1 : f.factors.back().p;
}

ExtendedInt smallest_prime(const Factorization& f) {
    return f.factors.empty() ? ExtendedInt::infinity() : ExtendedInt::finite(f.factors.front().p);
}

bool is_squarefree(const Factorization& f) {
    return std::all_of(f.factors.begin(), f.factors.end(),
                       [](const PrimePower& pe) { return pe.e == 1; });
}

u64 phi_of(const Factorization& f) {
    u64 r = 1;
    for (const auto& [p, e] : f.factors) {
        r *= p - 1;
        for (int i = 1; i < e; ++i) r *= p;
    }
    return r;
}

}  // namespace gcdphi
