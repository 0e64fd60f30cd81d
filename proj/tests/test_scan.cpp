#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "gcdphi/errors.hpp"
#include "gcdphi/multiplicative.hpp"
#include "gcdphi/scan.hpp"

using namespace gcdphi;

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

bool trial_is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

u64 trial_tau(u64 n) {
    u64 c = 0;
    for (u64 d = 1; d <= n; ++d) c += n % d == 0;
    return c;
}

// S_g(x) straight from the definition, with f supplied as a function of n.
template <class F>
i64 brute_s(u64 x, F f) {
    i64 s = 0;
    for (u64 n = 1; n <= x; ++n) s += f(std::gcd(n, trial_phi(n)));
    return s;
}

}  // namespace

TEST_CASE("congruence_sum examples") {
    CHECK(congruence_sum(1, 10) == 10);
    CHECK(congruence_sum(2, 10) == 4);
    CHECK(congruence_sum(3, 30) == 4);
    CHECK_THROWS_AS(congruence_sum(0, 10), PreconditionError);
}

TEST_CASE("congruence_sum monotone and bounded") {
    const std::vector<u64> phi = phi_table(5000);
    for (u64 d = 1; d <= 60; ++d) {
        u64 prev = 0;
        for (u64 x = 1; x <= 5000; x += 37) {
            const u64 a = congruence_sum(d, x, phi);
            CHECK(a >= prev);
            CHECK(a <= x / d);
            prev = a;
        }
        CHECK(congruence_sum(d, 5000) == congruence_sum(d, 5000, phi));
    }
}

TEST_CASE("s_direct small examples") {
    CHECK(std::get<i64>(s_direct(builtin_spec("tau"), 10).value) == 16);
    CHECK(std::get<i64>(s_direct(builtin_spec("mu"), 30).value) == 12);
    for (const char* name : {"mu", "tau", "two-squares", "rfree:2"}) {
        CHECK(std::get<i64>(s_direct(builtin_spec(name), 1).value) == 1);
    }
    CHECK_THROWS_AS(s_direct(builtin_spec("mu"), 0), PreconditionError);
    CHECK_THROWS_AS(s_direct(builtin_spec("mu"), kMaxN + 1), CapacityError);
}

TEST_CASE("s_direct matches brute force at x = 1000") {
    CHECK(std::get<i64>(s_direct(builtin_spec("mu"), 1000).value) ==
          brute_s(1000, [](u64 g) { return g == 1 ? 1 : 0; }));
    CHECK(std::get<i64>(s_direct(builtin_spec("tau"), 1000).value) ==
          brute_s(1000, [](u64 g) { return static_cast<i64>(trial_tau(g)); }));
    CHECK(std::get<i64>(s_direct(builtin_spec("mu"), 1000).value) == 325);
}

TEST_CASE("s_inversion examples") {
    CHECK(std::get<i64>(s_inversion(builtin_spec("mu"), 30).value) == 12);
    CHECK(std::get<i64>(s_inversion(builtin_spec("tau"), 10).value) == 16);
    const MultiplicativeSpec one("one", [](u64, int) { return 0.0; }, true);
    for (u64 x : {1, 17, 1000}) {
        CHECK(std::get<i64>(s_inversion(one, x).value) == static_cast<i64>(x));
        CHECK(std::get<i64>(s_direct(one, x).value) == static_cast<i64>(x));
    }
    CHECK_THROWS_AS(s_inversion(builtin_spec("mu"), kMaxInversionX + 1), CapacityError);
}

TEST_CASE("inversion identity is bit-exact") {
    for (const char* name : {"mu", "tau", "two-squares", "rpower:2", "rfree:2", "smooth:5"}) {
        const auto spec = builtin_spec(name);
        for (u64 x : {1000, 10000}) {
            const ScanResult d = s_direct(spec, x);
            const ScanResult i = s_inversion(spec, x);
            REQUIRE(d.exact());
            REQUIRE(i.exact());
            CHECK_MESSAGE(d.value == i.value, name << " x=" << x);
        }
    }
}

TEST_CASE("real-valued specs agree to 1e-9 x") {
    const MultiplicativeSpec soft("soft", [](u64 p, int j) { return std::pow(-0.5, j) / p; }, false);
    for (u64 x : {1000, 20000}) {
        const ScanResult d = s_direct(soft, x);
        const ScanResult i = s_inversion(soft, x);
        CHECK_FALSE(d.exact());
        CHECK(std::abs(d.as_double() - i.as_double()) <= 1e-9 * static_cast<double>(x));
    }
}

TEST_CASE("phi divisibility counts") {
    CHECK(count_phi_divisible(1, 1000) == 1000);
    // phi(n) is even for n = 3..10, including phi(6) = 2.
    CHECK(count_phi_divisible(2, 10) == 8);
    CHECK(count_p_divides_phi(2, 10) == 8);
    CHECK(count_p_divides_phi(101, 100) == 0);
    CHECK_THROWS_AS(count_p_divides_phi(4, 100), PreconditionError);

    for (u64 d : {3, 5, 7, 15, 35}) {
        u64 div = 0;
        u64 cop = 0;
        for (u64 n = 1; n <= 100; ++n) {
            div += trial_phi(n) % d == 0;
            cop += std::gcd(trial_phi(n), d) == 1;
        }
        CHECK(count_phi_divisible(d, 100) == div);
        CHECK(count_phi_coprime(d, 100) == cop);
    }
    u64 brute = 0;
    for (u64 n = 1; n <= 10'000; ++n) brute += trial_phi(n) % 101 == 0;
    CHECK(count_p_divides_phi(101, 10'000) == brute);
}

TEST_CASE("divisible count and its complement partition x") {
    const std::vector<u64> phi = phi_table(20'000);
    for (u64 d : {2, 3, 6, 9, 11, 35, 101}) {
        u64 not_div = 0;
        for (u64 n = 1; n <= 20'000; ++n) not_div += phi[n] % d != 0;
        CHECK(count_phi_divisible(d, 20'000) + not_div == 20'000);
    }
}

TEST_CASE("gcd histogram") {
    const GcdHistogram h10 = gcd_histogram(10);
    CHECK(h10.counts == std::map<u64, u64>{{1, 5}, {2, 3}, {3, 1}, {4, 1}});
    CHECK(h10.total() == 10);
    CHECK(gcd_histogram(1).counts == std::map<u64, u64>{{1, 1}});
    CHECK(gcd_histogram(1000).total() == 1000);

    const GcdHistogram capped = gcd_histogram(5000, 3);
    u64 over = 0;
    for (u64 n = 1; n <= 5000; ++n) over += std::gcd(n, trial_phi(n)) > 3;
    CHECK(capped.overflow == over);
    CHECK(capped.total() == 5000);
    CHECK_THROWS_AS(gcd_histogram(10, 0), PreconditionError);
}

TEST_CASE("prime reciprocal sums") {
    CHECK(prime_reciprocal_sum(10, 3, 4) == doctest::Approx(1.0 / 3 + 1.0 / 7).epsilon(1e-15));
    double expect = 0.0;
    for (u64 p : {5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97}) expect += 1.0 / p;
    CHECK(prime_reciprocal_sum(100, 1, 4) == doctest::Approx(expect).epsilon(1e-15));
    double all = 0.0;
    for (u64 n = 2; n <= 1000; ++n) {
        if (trial_is_prime(n)) all += 1.0 / n;
    }
    CHECK(prime_reciprocal_sum(1000, 1, 1) == doctest::Approx(all).epsilon(1e-14));
    CHECK_THROWS_AS(prime_reciprocal_sum(100, 0, 1), DomainError);
    CHECK_THROWS_AS(prime_reciprocal_sum(100, 2, 4), DomainError);
}

TEST_CASE("scan results do not depend on threads or segment size") {
    const MultiplicativeSpec soft("soft", [](u64 p, int j) { return std::pow(-0.5, j) / p; }, false);
    const u64 x = 300'000;
    const ScanResult ref_soft = s_direct(soft, x, {1 << 12, 1});
    const ScanResult ref_tau = s_direct(builtin_spec("tau"), x, {1 << 12, 1});
    for (ScanOptions o : {ScanOptions{1 << 12, 4}, ScanOptions{1 << 12, 3}}) {
        CHECK(s_direct(soft, x, o).value == ref_soft.value);
        CHECK(s_direct(builtin_spec("tau"), x, o).value == ref_tau.value);
    }
    // Exact sums are also independent of the segment size.
    for (u64 seg : {u64{1000}, u64{77'777}, kDefaultSegment}) {
        CHECK(s_direct(builtin_spec("tau"), x, {seg, 2}).value == ref_tau.value);
        CHECK(std::abs(s_direct(soft, x, {seg, 2}).as_double() - ref_soft.as_double()) <=
              1e-12 * static_cast<double>(x));
    }
    CHECK(count_phi_coprime(35, x, {1 << 12, 4}) == count_phi_coprime(35, x));
    CHECK(gcd_histogram(x, 100, {5000, 4}).counts == gcd_histogram(x, 100).counts);
    CHECK_THROWS_AS(s_direct(soft, 10, {0, 1}), ConfigError);
    CHECK_THROWS_AS(s_direct(soft, 10, {10, 0}), ConfigError);
}
