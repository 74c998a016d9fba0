#include "eslab/digits.hpp"

#include <stdexcept>
#include <string>

namespace eslab {

uint64_t DigitVector::reassemble() const {
    uint64_t v = 0;
    for (size_t i = digits.size(); i-- > 0;) v = v * base + digits[i];
    return v;
}

DigitVector digits(uint64_t k, uint64_t base) {
    if (base < 2)
        throw std::invalid_argument("digits: base must be at least 2, got " +
                                    std::to_string(base));
    DigitVector d;
    d.value = k;
    d.base = base;
    if (k == 0) {
        d.digits.push_back(0);
        return d;
    }
    while (k > 0) {
        d.digits.push_back(k % base);
        k /= base;
    }
    return d;
}

bool dominates(uint64_t n, uint64_t k, uint64_t p) {
    if (p < 2)
        throw std::invalid_argument("dominates: base must be at least 2");
    if (n < k)
        throw std::invalid_argument("dominates: require n >= k, got n=" +
                                    std::to_string(n) + " k=" + std::to_string(k));
    // Lockstep division; digits of n above k's top digit dominate trivially.
    while (k > 0) {
        if (n % p < k % p) return false;
        n /= p;
        k /= p;
    }
    return true;
}

bool binomial_prime_free(uint64_t n, uint64_t k, uint64_t limit,
                         const PrimeTable& primes) {
    if (n < k)
        throw std::invalid_argument("binomial_prime_free: require n >= k");
    primes.require_limit(limit, "binomial_prime_free");
    for (uint64_t p : primes.primes) {
        if (p > limit) break;
        if (!dominates(n, k, p)) return false;
    }
    return true;
}

} // namespace eslab
