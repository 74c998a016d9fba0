#include "eslab/primes.hpp"
#include "eslab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace eslab {

uint64_t isqrt64(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

bool PrimeTable::contains(uint64_t p) const {
    return std::binary_search(primes.begin(), primes.end(), p);
}

void PrimeTable::require_limit(uint64_t needed, const char* caller) const {
    if (limit < needed)
        throw std::invalid_argument(std::string(caller) + ": prime table limit " +
                                    std::to_string(limit) + " below required " +
                                    std::to_string(needed));
}

namespace {

std::vector<uint64_t> small_sieve(uint64_t limit) {
    std::vector<uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<uint8_t> composite(limit + 1, 0);
    for (uint64_t i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    for (uint64_t i = 2; i <= limit; ++i)
        if (!composite[i]) primes.push_back(i);
    return primes;
}

uint64_t prime_count_estimate(uint64_t limit) {
    if (limit < 17) return 8;
    double x = static_cast<double>(limit);
    return static_cast<uint64_t>(1.2 * x / (std::log(x) - 1.1)) + 16;
}

} // namespace

PrimeTable primes_up_to(uint64_t limit, const SieveOptions& options) {
    uint64_t segment = std::max<uint64_t>(options.segment_size, 64);

    uint64_t estimated_bytes = prime_count_estimate(limit) * sizeof(uint64_t) + segment;
    if (estimated_bytes > options.memory_budget_bytes)
        throw ResourceError("primes_up_to: limit " + std::to_string(limit) +
                            " needs ~" + std::to_string(estimated_bytes) +
                            " bytes, over the " +
                            std::to_string(options.memory_budget_bytes) +
                            "-byte budget; sieve in segments instead");

    PrimeTable table;
    table.limit = limit;
    if (limit < 2) return table;

    uint64_t root = isqrt64(limit);
    std::vector<uint64_t> base = small_sieve(root);
    table.primes.reserve(prime_count_estimate(limit));

    std::vector<uint8_t> composite(segment);
    for (uint64_t low = 2; low <= limit; low += segment) {
        uint64_t high = std::min(limit, low + segment - 1);
        uint64_t len = high - low + 1;
        std::fill(composite.begin(), composite.begin() + len, 0);
        for (uint64_t p : base) {
            if (p * p > high) break;
            uint64_t start = std::max(p * p, ((low + p - 1) / p) * p);
            for (uint64_t j = start; j <= high; j += p) composite[j - low] = 1;
        }
        for (uint64_t i = 0; i < len; ++i)
            if (!composite[i]) table.primes.push_back(low + i);
    }
    return table;
}

} // namespace eslab
