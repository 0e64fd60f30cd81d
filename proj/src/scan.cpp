#include "gcdphi/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "gcdphi/errors.hpp"
#include "gcdphi/numeric.hpp"

namespace gcdphi {

namespace {

constexpr u64 kFCacheSize = u64{1} << 16;

void check_x(u64 x, const char* what) {
    if (x < 1) throw PreconditionError(std::string(what) + ": x must be >= 1");
    if (x > kMaxN) throw CapacityError(std::string(what) + ": x exceeds supported range 2^40");
}

void check_options(const ScanOptions& opts) {
    if (opts.segment < 1) throw ConfigError("scan: segment size must be >= 1");
    if (opts.threads < 1) throw ConfigError("scan: worker count must be >= 1");
}

// Runs fn over the blocks [1, x] in segments and returns one partial per
// segment, indexed by segment number.
template <class Partial, class Fn>
std::vector<Partial> run_segments(u64 x, const ScanOptions& opts, const PrimeTable& primes,
                                  Fn fn) {
    check_options(opts);
    const u64 count = (x + opts.segment - 1) / opts.segment;
    std::vector<Partial> partials(static_cast<std::size_t>(count));
    std::atomic<u64> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        try {
            PhiBlock block;
            std::vector<u64> scratch;
            for (u64 i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                const u64 lo = 1 + i * opts.segment;
                const u64 hi = std::min(x + 1, lo + opts.segment);
                phi_block_into(block, scratch, lo, hi, primes);
                partials[static_cast<std::size_t>(i)] = fn(block);
            }
        } catch (...) {
            next.store(count);
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };
    const unsigned n_workers =
        static_cast<unsigned>(std::min<u64>(opts.threads, std::max<u64>(count, 1)));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
    return partials;
}

template <class Pred>
u64 count_where(u64 x, const ScanOptions& opts, Pred pred) {
    const PrimeTable primes = sieve_primes(isqrt(x));
    auto partials = run_segments<u64>(x, opts, primes, [&](const PhiBlock& b) {
        u64 c = 0;
        for (u64 v : b.values) c += pred(v) ? 1 : 0;
        return c;
    });
    u64 total = 0;
    for (u64 c : partials) total += c;
    return total;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

}  // namespace

double ScanResult::as_double() const {
    return std::visit([](auto v) { return static_cast<double>(v); }, value);
}

void for_each_phi_block(u64 x, u64 segment, const std::function<void(const PhiBlock&)>& fn) {
    check_x(x, "for_each_phi_block");
    if (segment < 1) throw ConfigError("for_each_phi_block: segment must be >= 1");
    const PrimeTable primes = sieve_primes(isqrt(x));
    PhiBlock block;
    std::vector<u64> scratch;
    for (u64 lo = 1; lo <= x; lo += segment) {
        phi_block_into(block, scratch, lo, std::min(x + 1, lo + segment), primes);
        fn(block);
    }
}

std::vector<u64> phi_table(u64 x) {
    std::vector<u64> phi(static_cast<std::size_t>(x) + 1, 0);
    for_each_phi_block(x, kDefaultSegment, [&](const PhiBlock& b) {
        std::copy(b.values.begin(), b.values.end(), phi.begin() + static_cast<std::ptrdiff_t>(b.lo));
    });
    return phi;
}

u64 congruence_sum(u64 d, u64 x, std::span<const u64> phi) {
    if (d < 1) throw PreconditionError("congruence_sum: d must be >= 1");
    if (phi.size() <= x) throw PreconditionError("congruence_sum: phi table shorter than x");
    u64 count = 0;
    for (u64 n = d; n <= x; n += d) count += (phi[n] % d == 0) ? 1 : 0;
    return count;
}

u64 congruence_sum(u64 d, u64 x) {
    if (d < 1) throw PreconditionError("congruence_sum: d must be >= 1");
    check_x(x, "congruence_sum");
    u64 count = 0;
    for_each_phi_block(x, kDefaultSegment, [&](const PhiBlock& b) {
        for (u64 n = (b.lo + d - 1) / d * d; n < b.hi; n += d) {
            count += (b.at(n) % d == 0) ? 1 : 0;
        }
    });
    return count;
}

ScanResult s_direct(const MultiplicativeSpec& spec, u64 x, const ScanOptions& opts) {
    check_x(x, "s_direct");
    const auto start = std::chrono::steady_clock::now();
    const PrimeTable primes = sieve_primes(std::max<u64>(isqrt(x), isqrt(kFCacheSize)));

    // f(v) for small v; gcd values are almost always tiny.
    const u64 cache_n = std::min(kFCacheSize, x + 1);
    ScanResult result;
    result.x = x;
    result.spec_name = spec.name();
    result.mode = ScanMode::direct;

    if (spec.integer_valued()) {
        std::vector<i64> cache(static_cast<std::size_t>(cache_n));
        for (u64 v = 1; v < cache_n; ++v) cache[v] = eval_f_exact(spec, factorize(v, primes));
        auto partials = run_segments<i64>(x, opts, primes, [&](const PhiBlock& b) {
            i64 acc = 0;
            u64 n = b.lo;
            for (u64 phi : b.values) {
                const u64 v = gcd_fast(n++, phi);
                acc += v < cache_n ? cache[v] : eval_f_exact(spec, factorize(v, primes));
            }
            return acc;
        });
        i64 total = 0;
        for (i64 s : partials) total += s;
        result.value = total;
    } else {
        std::vector<double> cache(static_cast<std::size_t>(cache_n));
        for (u64 v = 1; v < cache_n; ++v) cache[v] = eval_f(spec, factorize(v, primes));
        auto partials = run_segments<double>(x, opts, primes, [&](const PhiBlock& b) {
            CompensatedSum acc;
            u64 n = b.lo;
            for (u64 phi : b.values) {
                const u64 v = gcd_fast(n++, phi);
                acc += v < cache_n ? cache[v] : eval_f(spec, factorize(v, primes));
            }
            return acc.value();
        });
        CompensatedSum total;
        for (double s : partials) total += s;
        result.value = total.value();
    }
    result.runtime_ms = elapsed_ms(start);
    return result;
}

ScanResult s_inversion(const MultiplicativeSpec& spec, u64 x) {
    check_x(x, "s_inversion");
    if (x > kMaxInversionX) {
        throw CapacityError("s_inversion: x = " + std::to_string(x) + " above limit " +
                            std::to_string(kMaxInversionX));
    }
    const auto start = std::chrono::steady_clock::now();
    const std::vector<u64> phi = phi_table(x);
    const PrimeTable primes = sieve_primes(isqrt(x));

    ScanResult result;
    result.x = x;
    result.spec_name = spec.name();
    result.mode = ScanMode::inversion;
    if (spec.integer_valued()) {
        i64 total = 0;
        for (u64 d = 1; d <= x; ++d) {
            const i64 g = eval_g_exact(spec, factorize(d, primes));
            if (g != 0) total += g * static_cast<i64>(congruence_sum(d, x, phi));
        }
        result.value = total;
    } else {
        CompensatedSum total;
        for (u64 d = 1; d <= x; ++d) {
            const double g = eval_g(spec, factorize(d, primes));
            if (g != 0.0) total += g * static_cast<double>(congruence_sum(d, x, phi));
        }
        result.value = total.value();
    }
    result.runtime_ms = elapsed_ms(start);
    return result;
}

u64 count_phi_divisible(u64 d, u64 x, const ScanOptions& opts) {
    if (d < 1) throw PreconditionError("count_phi_divisible: d must be >= 1");
    check_x(x, "count_phi_divisible");
    return count_where(x, opts, [d](u64 phi) { return phi % d == 0; });
}

u64 count_phi_coprime(u64 d, u64 x, const ScanOptions& opts) {
    if (d < 1) throw PreconditionError("count_phi_coprime: d must be >= 1");
    check_x(x, "count_phi_coprime");
    return count_where(x, opts, [d](u64 phi) { return gcd_fast(phi, d) == 1; });
}

u64 count_p_divides_phi(u64 p, u64 x, const ScanOptions& opts) {
    if (!is_prime(p)) throw PreconditionError("count_p_divides_phi: p must be prime");
    check_x(x, "count_p_divides_phi");
    return count_where(x, opts, [p](u64 phi) { return phi % p == 0; });
}

u64 GcdHistogram::total() const {
    u64 t = overflow;
    for (const auto& [v, c] : counts) t += c;
    return t;
}

GcdHistogram gcd_histogram(u64 x, u64 cap, const ScanOptions& opts) {
    if (cap < 1) throw PreconditionError("gcd_histogram: cap must be >= 1");
    check_x(x, "gcd_histogram");
    const PrimeTable primes = sieve_primes(isqrt(x));
    const u64 slots = std::min(cap, x) + 1;
    auto partials = run_segments<std::vector<u64>>(x, opts, primes, [&](const PhiBlock& b) {
        std::vector<u64> local(static_cast<std::size_t>(slots) + 1, 0);  // last slot: overflow
        u64 n = b.lo;
        for (u64 phi : b.values) {
            const u64 v = gcd_fast(n++, phi);
            ++local[v <= cap ? static_cast<std::size_t>(v) : static_cast<std::size_t>(slots)];
        }
        return local;
    });
    GcdHistogram h;
    h.x = x;
    h.cap = cap;
    std::vector<u64> merged(static_cast<std::size_t>(slots) + 1, 0);
    for (const auto& part : partials) {
        for (std::size_t i = 0; i < merged.size(); ++i) merged[i] += part[i];
    }
    for (u64 v = 1; v < slots; ++v) {
        if (merged[v] != 0) h.counts[v] = merged[v];
    }
    h.overflow = merged[static_cast<std::size_t>(slots)];
    return h;
}

double prime_reciprocal_sum(u64 x, u64 a, u64 m) {
    if (a < 1 || m < 1) throw DomainError("prime_reciprocal_sum: a and m must be positive");
    if (gcd_fast(a, m) != 1) throw DomainError("prime_reciprocal_sum: gcd(a, m) must be 1");
    const PrimeTable primes = sieve_primes(x);
    const u64 residue = a % m;
    CompensatedSum sum;
    for (std::uint32_t p : primes) {
        if (p % m == residue) sum += 1.0 / static_cast<double>(p);
    }
    return sum.value();
}

}  // namespace gcdphi
