#ifndef ESLAB_PRIMES_HPP
#define ESLAB_PRIMES_HPP

#include <cstdint>
#include <vector>

namespace eslab {

// All primes up to a fixed limit, ascending. Immutable after construction
// and safe to share across threads.
struct PrimeTable {
    uint64_t limit = 0;
    std::vector<uint64_t> primes;

    uint64_t count() const { return primes.size(); }
    bool contains(uint64_t p) const;

    // Throws std::invalid_argument if limit < needed.
    void require_limit(uint64_t needed, const char* caller) const;
};

struct SieveOptions {
    uint64_t segment_size = uint64_t(1) << 20;
    // Budget for the returned prime list plus sieve scratch. Exceeding it
    // raises ResourceError before any allocation happens.
    uint64_t memory_budget_bytes = uint64_t(1) << 30;
};

PrimeTable primes_up_to(uint64_t limit, const SieveOptions& options = {});

uint64_t isqrt64(uint64_t n);

} // namespace eslab

#endif
