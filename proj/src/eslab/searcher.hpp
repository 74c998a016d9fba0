#ifndef ESLAB_SEARCHER_HPP
#define ESLAB_SEARCHER_HPP

#include <chrono>
#include <cstdint>
#include <vector>

#include "eslab/digits.hpp"
#include "eslab/primes.hpp"

namespace eslab {

enum class SearchMethod { naive, wheel };

struct SearchConfig {
    uint64_t k = 0;
    // Scan aborts past this n with NotFoundError; 0 means the default of
    // 10 * ceil(ghat(k)).
    uint64_t scan_bound = 0;
    SearchMethod method = SearchMethod::wheel;
    uint64_t wheel_budget = uint64_t(1) << 62; // max wheel modulus
    uint32_t workers = 1;
};

// Per-prime domination witness: the base-p digits of k and of the answer.
struct CertificateEntry {
    uint64_t prime = 0;
    std::vector<uint64_t> k_digits;
    std::vector<uint64_t> g_digits;
};

struct SearchResult {
    uint64_t k = 0;
    uint64_t g = 0; // least n > k+1 with binomial(n, k) free of prime factors <= k
    uint64_t candidates_tested = 0;
    std::vector<CertificateEntry> certificate;
    std::chrono::duration<double> elapsed{0};
};

// All residues r modulo p^(digit count of k) whose low digits dominate the
// digits of k, ascending. Their count is the p-part of the residue count.
std::vector<uint64_t> allowed_residues(uint64_t k, uint64_t p);

SearchResult g_naive(const SearchConfig& config, const PrimeTable& primes);
SearchResult g_wheel(const SearchConfig& config, const PrimeTable& primes);
SearchResult search(const SearchConfig& config, const PrimeTable& primes);

} // namespace eslab

#endif
