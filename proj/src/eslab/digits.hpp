#ifndef ESLAB_DIGITS_HPP
#define ESLAB_DIGITS_HPP

#include <cstdint>
#include <vector>

#include "eslab/primes.hpp"

namespace eslab {

// Base-p expansion, least-significant digit first. digits(0) is [0] so the
// length is always floor(log_p value) + 1 and never empty.
struct DigitVector {
    uint64_t value = 0;
    uint64_t base = 2;
    std::vector<uint64_t> digits;

    uint64_t reassemble() const;
};

DigitVector digits(uint64_t k, uint64_t base);

// Digitwise base-p domination: every digit of k <= matching digit of n.
// For prime p this is exactly "p does not divide binomial(n, k)" (the
// carry-free criterion for adding k and n-k in base p).
bool dominates(uint64_t n, uint64_t k, uint64_t p);

// True iff binomial(n, k) has no prime factor <= limit.
bool binomial_prime_free(uint64_t n, uint64_t k, uint64_t limit,
                         const PrimeTable& primes);

} // namespace eslab

#endif
