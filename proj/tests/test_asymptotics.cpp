#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eslab/asymptotics.hpp"
#include "eslab/digits.hpp"
#include "eslab/errors.hpp"
#include "eslab/estimator.hpp"
#include "eslab/primes.hpp"

using namespace eslab;

namespace {

const PrimeTable& table_1m() {
    static PrimeTable table = primes_up_to(1000000);
    return table;
}

// Independent long-double evaluation of the series: direct sum plus the
// telescoping tail midpoint, good to ~1e-11.
long double series_oracle() {
    const int64_t terms = 2000000;
    long double sum = 0.0L;
    for (int64_t a = terms; a >= 1; --a)
        sum += std::log1p(1.0L / a) / (a + 1);
    long double tail_lo = 1.0L / (terms + 2), tail_hi = 1.0L / (terms + 1);
    return sum + (tail_lo + tail_hi) / 2;
}

constexpr double kEulerGamma = 0.5772156649015328606;

} // namespace

TEST_CASE("series partial sums") {
    CHECK(series_partial_sum(1) == doctest::Approx(std::log(2.0) / 2).epsilon(1e-15));
    CHECK(series_partial_sum(10) == doctest::Approx(0.6996653479198103).epsilon(1e-12));
}

TEST_CASE("growth constant bracket is rigorous and tight") {
    double oracle = static_cast<double>(series_oracle());
    for (double tolerance : {1e-6, 5e-8, 1e-10, 1e-12}) {
        ConstantResult result = growth_constant(tolerance);
        CAPTURE(tolerance);
        CHECK(result.lower <= result.value);
        CHECK(result.value <= result.upper);
        CHECK(result.upper - result.lower <= tolerance * (1 + 1e-9));
        CHECK(result.lower <= oracle);
        CHECK(oracle <= result.upper);
        CHECK(result.terms_used > 0);
    }
}

TEST_CASE("growth constant value agrees across tolerances") {
    ConstantResult coarse = growth_constant(1e-6);
    ConstantResult fine = growth_constant(1e-12);
    // fine bracket nests inside the coarse one
    CHECK(coarse.lower <= fine.lower);
    CHECK(fine.upper <= coarse.upper);
    CHECK(fine.value == doctest::Approx(0.78853056591150896).epsilon(1e-12));
    CHECK(fine.value_text.substr(0, 12) == "0.7885305659");
}

TEST_CASE("growth constant rejects silly tolerances") {
    CHECK_THROWS_AS(growth_constant(1e-13), std::invalid_argument);
    CHECK_THROWS_AS(growth_constant(0.0), std::invalid_argument);
    CHECK_THROWS_AS(growth_constant(-1.0), std::invalid_argument);
}

TEST_CASE("chebyshev weighted sum") {
    const PrimeTable& table = table_1m();
    CHECK(chebyshev_weighted_sum(2, table) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    // 3 log 2 + 2 log 3 + log 5 + log 7 = log 2520
    CHECK(chebyshev_weighted_sum(10, table) ==
          doctest::Approx(std::log(2520.0)).epsilon(1e-13));
    double at_million = chebyshev_weighted_sum(1000000, table);
    CHECK(at_million / 1e6 > 0.95);
    CHECK(at_million / 1e6 < 1.05);
    CHECK_THROWS_AS(chebyshev_weighted_sum(1, table), std::invalid_argument);
}

TEST_CASE("mertens product") {
    const PrimeTable& table = table_1m();
    CHECK(mertens_product(3, table) == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(mertens_product(10, table) == doctest::Approx(4.375).epsilon(1e-13));
    double ratio = mertens_product(1000000, table) / std::log(1e6);
    CHECK(std::fabs(ratio / std::exp(kEulerGamma) - 1.0) < 0.01);
}

TEST_CASE("mertens ratio approaches exp(gamma) monotonically from above") {
    const PrimeTable& table = table_1m();
    double target = std::exp(kEulerGamma);
    double previous_distance = 1e300;
    for (uint64_t x : {1000, 10000, 100000, 1000000}) {
        double ratio = mertens_product(x, table) / std::log(double(x));
        CHECK(ratio > target);
        double distance = ratio - target;
        CHECK(distance < previous_distance + 1e-9);
        previous_distance = distance;
    }
}

TEST_CASE("f0 pieces partition the least-digit factor") {
    const PrimeTable& table = table_1m();
    for (uint64_t k : {100, 1234, 10000, 99991, 1000000}) {
        F0Pieces pieces = f0_pieces(k, table);
        double total = pieces.piece_tail + pieces.piece_logp + pieces.piece_neg;
        CHECK(std::fabs(total - pieces.f0_direct) <=
              1e-9 * std::max(1.0, std::fabs(pieces.f0_direct)));
    }
    CHECK_THROWS_AS(f0_pieces(99, table), std::invalid_argument);
}

TEST_CASE("second digit equals floor(k/p) for every prime past sqrt(k)") {
    PrimeTable table = primes_up_to(10000);
    for (uint64_t k = 2; k <= 10000; ++k) {
        uint64_t root = isqrt64(k);
        for (uint64_t p : table.primes) {
            if (p > k) break;
            if (p <= root) continue;
            CHECK(digits(k, p).digits[1] == k / p);
        }
    }
}

TEST_CASE("antiderivative residuals on the reference grid") {
    CHECK(antiderivative_check(1, 1.5) < 1e-6);
    CHECK(antiderivative_check(3, 1.2) < 1e-6);
    CHECK(antiderivative_check(10, 1.05) < 1e-6);
    for (uint64_t a : {1, 2, 5, 20, 100}) {
        for (double t : {0.25, 0.5, 0.75, 1.0}) {
            double u = 1.0 + t / static_cast<double>(a);
            CHECK(antiderivative_check(a, u) < 1e-6);
        }
    }
    CHECK_THROWS_AS(antiderivative_check(1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(antiderivative_check(2, 1.6), std::invalid_argument);
    CHECK_THROWS_AS(antiderivative_check(0, 1.5), std::invalid_argument);
}

TEST_CASE("quadrature matches the closed form") {
    auto [q1, c1] = integral_identity_check(1);
    CHECK(c1 == doctest::Approx(-std::log(2.0)).epsilon(1e-14));
    CHECK(std::fabs(q1 - c1) < 1e-8);
    auto [q2, c2] = integral_identity_check(2);
    CHECK(c2 == doctest::Approx(-std::log(1.5)).epsilon(1e-14));
    CHECK(std::fabs(q2 - c2) < 1e-8);
    double previous = 1e300;
    for (uint64_t a : {1, 2, 5, 17, 100, 523, 1000}) {
        auto [quadrature, closed_form] = integral_identity_check(a);
        CHECK(std::fabs(quadrature - closed_form) < 1e-8);
        CHECK(std::fabs(closed_form) < previous); // |log(1+1/a)| decreases in a
        previous = std::fabs(closed_form);
    }
}

TEST_CASE("convergence rows") {
    const PrimeTable& table = table_1m();
    auto rows = convergence_table({3, 5}, table);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].normalized > 0.0);
    CHECK(rows[1].log_ghat == doctest::Approx(std::log(22.5)).epsilon(1e-12));
    CHECK(rows[1].normalized ==
          doctest::Approx(std::log(22.5) * std::log(5.0) / 5.0).epsilon(1e-12));
    CHECK_THROWS_AS(convergence_table({2}, table), std::invalid_argument);
}

TEST_CASE("normalized values trend toward the series constant") {
    const PrimeTable& table = table_1m();
    double constant = growth_constant(1e-9).value;
    auto rows = convergence_table({1000, 10000, 100000, 1000000}, table);
    double first = std::fabs(rows.front().normalized - constant);
    double last = std::fabs(rows.back().normalized - constant);
    CHECK(last < first);
    // distances shrink monotonically on this grid
    for (size_t i = 1; i < rows.size(); ++i)
        CHECK(std::fabs(rows[i].normalized - constant) <
              std::fabs(rows[i - 1].normalized - constant));
}
