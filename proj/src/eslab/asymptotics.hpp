#ifndef ESLAB_ASYMPTOTICS_HPP
#define ESLAB_ASYMPTOTICS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eslab/primes.hpp"

namespace eslab {

// Rigorous two-sided bracket of the growth constant
// c = sum_{a>=1} log(1+1/a)/(a+1), the coefficient of k/log k in log ghat(k).
struct ConstantResult {
    double value = 0.0;  // midpoint of the bracket
    double lower = 0.0;  // rounded outward
    double upper = 0.0;
    int64_t terms_used = 0;
    std::string value_text; // 30 significant digits of the midpoint
};

struct F0Pieces {
    uint64_t k = 0;
    double piece_tail = 0.0; // second digit a >= (log k)^2, both log terms
    double piece_logp = 0.0; // log p term for a < (log k)^2
    double piece_neg = 0.0;  // -log((a+1)p - k) term for a < (log k)^2
    double f0_direct = 0.0;  // log_f0 from decompose, same prime range
};

struct ConvergenceRow {
    uint64_t k = 0;
    double log_ghat = 0.0;
    double normalized = 0.0; // log_ghat * log k / k
};

// Directed-rounding evaluation of the series with a rigorous tail bracket;
// the bracket width never exceeds tolerance. Requires tolerance >= 1e-12.
ConstantResult growth_constant(double tolerance);

// Plain double partial sum of the same series (first `terms` values of a).
double series_partial_sum(uint64_t terms);

// sum_{p <= x} floor(log_p x) * log p, the prime-power log sum psi(x).
double chebyshev_weighted_sum(uint64_t x, const PrimeTable& primes);

// prod_{p <= x} p/(p-1), computed as a compensated log sum then exponentiated.
double mertens_product(uint64_t x, const PrimeTable& primes);

// Splits log_f0(k) by the second base-p digit a = floor(k/p): a tail for
// a >= (log k)^2 plus log p and -log((a+1)p - k) parts below it. The three
// pieces reconstitute log_f0 exactly. Requires k >= 100.
F0Pieces f0_pieces(uint64_t k, const PrimeTable& primes);

// |central difference of F at u minus log((a+1)(u-1)/u)| for
// F(u) = (u-1)log((a+1)(u-1)/u) - log u, step 1e-6.
double antiderivative_check(uint64_t a, double u);

// Adaptive quadrature of int_1^{1+1/a} log((a+1)(u-1)/u) du (first) versus
// the closed form -log(1+1/a) (second).
std::pair<double, double> integral_identity_check(uint64_t a);

std::vector<ConvergenceRow> convergence_table(const std::vector<uint64_t>& k_values,
                                              const PrimeTable& primes);

} // namespace eslab

#endif
