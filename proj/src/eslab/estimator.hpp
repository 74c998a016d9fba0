#ifndef ESLAB_ESTIMATOR_HPP
#define ESLAB_ESTIMATOR_HPP

#include <cstdint>
#include <optional>

#include "eslab/bigint.hpp"
#include "eslab/primes.hpp"

namespace eslab {

// The exact paths materialize integers of roughly 2k nats, so they are
// gated at this k; past it only the log-space entry points apply.
inline constexpr uint64_t kExactCutoff = 100000;

// ghat(k) = modulus / residue count, with the log split into the
// small-prime factor (p <= isqrt(k)) and, for larger p, the second-digit
// (f1) and least-digit (f0) factors.
struct EstimateBreakdown {
    uint64_t k = 0;
    std::optional<BigInt> modulus;        // product over p <= k of p^(digit count of k)
    std::optional<BigInt> residue_count;  // product over p, i of (p - digit_i)
    std::optional<Rational> ghat;
    double log_ghat = 0.0;
    double log_f_small = 0.0;
    double log_f1 = 0.0;
    double log_f0 = 0.0;
};

// Exact witnesses, at k with k+1 prime, for the jump of ghat from k to k+1.
// Every boolean is a theorem; a false value means an implementation bug.
struct RatioCertificate {
    uint64_t k = 0;
    bool m_identity_ok = false;       // modulus(k+1) == (k+1)^2 * modulus(k)
    bool r_identity_ok = false;       // closed form for residue_count(k)/residue_count(k+1)
    bool digit_increment_ok = false;  // base-p digits of k+1 = digits of k with least digit + 1
    Rational ratio;                   // ghat(k+1) / ghat(k)
    Rational mertens_lower_bound;     // ((k+1)/k) * prod_{p<=k} p/(p-1)
    bool bound_ok = false;            // ratio >= mertens_lower_bound
};

// Exact big-integer paths; require 2 <= k <= kExactCutoff and primes.limit >= k.
BigInt prime_power_modulus(uint64_t k, const PrimeTable& primes);
BigInt dominating_residue_count(uint64_t k, const PrimeTable& primes);
Rational ghat(uint64_t k, const PrimeTable& primes);

// Compensated log-space companion of ghat: sum of log p - log(p - digit)
// over ascending primes, then ascending digit index. Any k >= 2.
double ghat_log(uint64_t k, const PrimeTable& primes);

// Requires k >= 4 (the small-prime branch needs isqrt(k) >= 2).
EstimateBreakdown decompose(uint64_t k, const PrimeTable& primes);

// Requires k + 1 prime, k <= kExactCutoff, primes.limit >= k + 1.
RatioCertificate ratio_certificate(uint64_t k, const PrimeTable& primes);

} // namespace eslab

#endif
