#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <random>
#include <vector>

#include "eslab/digits.hpp"
#include "eslab/errors.hpp"
#include "eslab/primes.hpp"

using namespace eslab;

namespace {

// Independent oracle: one-shot flat sieve, no segmentation.
std::vector<uint64_t> oracle_sieve(uint64_t limit) {
    std::vector<uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> is_prime(limit + 1, true);
    is_prime[0] = is_prime[1] = false;
    for (uint64_t i = 2; i * i <= limit; ++i)
        if (is_prime[i])
            for (uint64_t j = i * i; j <= limit; j += i) is_prime[j] = false;
    for (uint64_t i = 2; i <= limit; ++i)
        if (is_prime[i]) primes.push_back(i);
    return primes;
}

bool oracle_prime_divides_binomial(uint64_t n, uint64_t k, uint64_t p) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return mpz_divisible_ui_p(b.get_mpz_t(), p) != 0;
}

} // namespace

TEST_CASE("primes_up_to small values") {
    CHECK(primes_up_to(10).primes == std::vector<uint64_t>{2, 3, 5, 7});
    CHECK(primes_up_to(1).primes.empty());
    CHECK(primes_up_to(0).primes.empty());
    CHECK(primes_up_to(2).primes == std::vector<uint64_t>{2});
    PrimeTable t = primes_up_to(100);
    CHECK(t.count() == 25);
    CHECK(t.limit == 100);
    CHECK(t.contains(97));
    CHECK_FALSE(t.contains(91));
}

TEST_CASE("primes_up_to matches one-shot oracle at 10^6") {
    PrimeTable table = primes_up_to(1000000);
    CHECK(table.count() == 78498);
    CHECK(table.primes == oracle_sieve(1000000));
}

TEST_CASE("segment size does not change the output") {
    std::vector<uint64_t> expected = oracle_sieve(100000);
    for (uint64_t segment : {uint64_t(64), uint64_t(1000), uint64_t(370000)}) {
        SieveOptions options;
        options.segment_size = segment;
        CHECK(primes_up_to(100000, options).primes == expected);
    }
}

TEST_CASE("memory budget is enforced") {
    SieveOptions options;
    options.memory_budget_bytes = 1024;
    CHECK_THROWS_AS(primes_up_to(10'000'000, options), ResourceError);
}

TEST_CASE("digits examples") {
    CHECK(digits(23, 2).digits == std::vector<uint64_t>{1, 1, 1, 0, 1});
    CHECK(digits(5, 5).digits == std::vector<uint64_t>{0, 1});
    CHECK(digits(376, 7).digits == std::vector<uint64_t>{5, 4, 0, 1});
    CHECK(digits(0, 7).digits == std::vector<uint64_t>{0});
    CHECK_THROWS_AS(digits(5, 1), std::invalid_argument);
    CHECK_THROWS_AS(digits(5, 0), std::invalid_argument);
}

TEST_CASE("digit vectors satisfy their invariants and round trip") {
    PrimeTable table = primes_up_to(100);
    std::vector<uint64_t> first25(table.primes.begin(), table.primes.begin() + 25);
    REQUIRE(first25.size() == 25);

    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<uint64_t> pick(0, 100000);
    for (int i = 0; i < 2000; ++i) {
        uint64_t k = pick(rng);
        for (uint64_t p : first25) {
            DigitVector d = digits(k, p);
            CHECK(d.reassemble() == k);
            CHECK(d.digits.size() >= 1);
            if (k > 0) CHECK(d.digits.back() != 0);
            for (uint64_t digit : d.digits) CHECK(digit <= p - 1);
        }
    }
    // exhaustive low range
    for (uint64_t k = 0; k <= 3000; ++k)
        for (uint64_t p : {2, 3, 5, 7, 11})
            CHECK(digits(k, p).reassemble() == k);
}

TEST_CASE("dominates spot checks") {
    CHECK(dominates(7, 3, 2));
    CHECK_FALSE(oracle_prime_divides_binomial(7, 3, 2)); // C(7,3)=35
    CHECK_FALSE(dominates(6, 4, 3));
    CHECK(oracle_prime_divides_binomial(6, 4, 3)); // C(6,4)=15
    for (uint64_t n : {0, 1, 5, 100, 12345})
        for (uint64_t p : {2, 3, 13})
            CHECK(dominates(n, 0, p));
    CHECK_THROWS_AS(dominates(3, 7, 2), std::invalid_argument);
}

TEST_CASE("dominates agrees with exact binomial divisibility up to n=300") {
    for (uint64_t n = 0; n <= 300; ++n)
        for (uint64_t k = 0; k <= n; ++k)
            for (uint64_t p : {2, 3, 5, 7, 11, 13}) {
                bool free_of_p = dominates(n, k, p);
                bool divides = oracle_prime_divides_binomial(n, k, p);
                CHECK(free_of_p == !divides);
            }
}

TEST_CASE("binomial_prime_free examples") {
    PrimeTable table = primes_up_to(50);
    CHECK(binomial_prime_free(23, 5, 5, table));  // C(23,5)=33649=7*11*19*23
    CHECK_FALSE(binomial_prime_free(7, 5, 5, table)); // C(7,5)=21=3*7
    CHECK(binomial_prime_free(6, 2, 2, table));   // C(6,2)=15=3*5
    PrimeTable small = primes_up_to(3);
    CHECK_THROWS_AS(binomial_prime_free(10, 2, 7, small), std::invalid_argument);
}

TEST_CASE("binomial_prime_free agrees with trial division up to n=200") {
    PrimeTable table = primes_up_to(200);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 4000; ++trial) {
        uint64_t n = rng() % 201;
        uint64_t k = n == 0 ? 0 : rng() % (n + 1);
        uint64_t limit = 2 + rng() % 40;
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), n, k);
        bool expected = true;
        for (uint64_t p : table.primes) {
            if (p > limit) break;
            if (mpz_divisible_ui_p(b.get_mpz_t(), p)) {
                expected = false;
                break;
            }
        }
        CHECK(binomial_prime_free(n, k, limit, table) == expected);
    }
}

TEST_CASE("isqrt64 is exact near perfect squares") {
    for (uint64_t r : {0ull, 1ull, 2ull, 3ull, 999ull, 1000ull, 65536ull, 4294967295ull}) {
        uint64_t sq = r * r;
        CHECK(isqrt64(sq) == r);
        if (sq > 0) CHECK(isqrt64(sq - 1) == r - 1);
        if (r > 0) {
            CHECK(isqrt64(sq + 1) == r);
            CHECK(isqrt64(sq + 2 * r) == r); // (r+1)^2 - 1
        }
    }
}
