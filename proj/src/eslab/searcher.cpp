#include "eslab/searcher.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>

#include "eslab/errors.hpp"
#include "eslab/estimator.hpp"

namespace eslab {

namespace {

constexpr uint64_t kU64Max = ~uint64_t(0);
// Cap on materialized wheel residues (the folded-count product).
constexpr uint64_t kResidueBudget = uint64_t(1) << 22;

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

uint64_t inverse_mod(uint64_t a, uint64_t m) {
    // Extended Euclid; gcd(a, m) == 1 by construction (coprime prime powers).
    int64_t t = 0, new_t = 1;
    int64_t r = static_cast<int64_t>(m), new_r = static_cast<int64_t>(a % m);
    while (new_r != 0) {
        int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (t < 0) t += static_cast<int64_t>(m);
    return static_cast<uint64_t>(t);
}

struct Wheel {
    uint64_t modulus = 1;
    std::vector<uint64_t> residues{0};   // sorted, in [0, modulus)
    std::vector<uint64_t> folded_primes; // fully handled by the wheel

    // Candidates <= x, for the deterministic tested-count bookkeeping.
    uint64_t count_up_to(uint64_t x) const {
        uint64_t whole = (x / modulus) * residues.size();
        uint64_t rem = x % modulus;
        auto it = std::upper_bound(residues.begin(), residues.end(), rem);
        return whole + static_cast<uint64_t>(it - residues.begin());
    }
};

std::vector<uint64_t> crt_merge(const std::vector<uint64_t>& a, uint64_t ma,
                                const std::vector<uint64_t>& b, uint64_t mb) {
    std::vector<uint64_t> out;
    out.reserve(a.size() * b.size());
    uint64_t inv = inverse_mod(ma % mb, mb);
    for (uint64_t ra : a)
        for (uint64_t rb : b) {
            uint64_t diff = (rb + mb - ra % mb) % mb;
            uint64_t t = mulmod_u64(diff, inv, mb);
            out.push_back(ra + ma * t);
        }
    std::sort(out.begin(), out.end());
    return out;
}

// Residue count for p without materializing the list; saturates at kU64Max.
uint64_t residue_count_for_prime(uint64_t k, uint64_t p) {
    __uint128_t count = 1;
    uint64_t kk = k;
    while (true) {
        count *= p - kk % p;
        if (count > kU64Max) return kU64Max;
        kk /= p;
        if (kk == 0) break;
    }
    return static_cast<uint64_t>(count);
}

Wheel build_wheel(uint64_t k, const PrimeTable& primes, uint64_t wheel_budget) {
    Wheel wheel;
    for (uint64_t p : primes.primes) {
        if (p > k) break;
        uint64_t power = 1;
        uint64_t kk = k;
        while (true) {
            power *= p;
            kk /= p;
            if (kk == 0) break;
        }
        if (wheel.modulus > wheel_budget / power) break;
        uint64_t rc = residue_count_for_prime(k, p);
        if (rc == kU64Max || rc > kResidueBudget / wheel.residues.size()) break;
        wheel.residues =
            crt_merge(wheel.residues, wheel.modulus, allowed_residues(k, p), power);
        wheel.modulus *= power;
        wheel.folded_primes.push_back(p);
    }
    return wheel;
}

// Shared worker-pool scan. Segments are claimed in ascending order and each
// is scanned fully (ascending) until a candidate reaches the current best,
// so the final best is the global minimum regardless of scheduling.
class SegmentScan {
public:
    using Enumerate =
        std::function<void(uint64_t lo, uint64_t hi, const std::function<bool(uint64_t)>&)>;

    SegmentScan(uint64_t start, uint64_t bound, uint32_t workers, Enumerate enumerate,
                std::function<bool(uint64_t)> accept)
        : start_(start), bound_(bound), workers_(std::max<uint32_t>(workers, 1)),
          enumerate_(std::move(enumerate)), accept_(std::move(accept)) {
        uint64_t range = bound_ > start_ ? bound_ - start_ : 0;
        segment_size_ = std::max<uint64_t>(uint64_t(1) << 16, range >> 12);
    }

    uint64_t run() {
        if (workers_ == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers_);
            for (uint32_t i = 0; i < workers_; ++i)
                pool.emplace_back([this] { worker(); });
            for (auto& t : pool) t.join();
        }
        return best_.load();
    }

private:
    void worker() {
        while (true) {
            uint64_t s = next_segment_.fetch_add(1);
            __uint128_t lo128 = static_cast<__uint128_t>(start_) + static_cast<__uint128_t>(s) * segment_size_;
            if (lo128 > bound_) return;
            uint64_t lo = static_cast<uint64_t>(lo128);
            if (lo >= best_.load()) return;
            uint64_t hi = (bound_ - lo < segment_size_) ? bound_ + 1 : lo + segment_size_;
            enumerate_(lo, hi, [this](uint64_t n) {
                if (n >= best_.load(std::memory_order_relaxed)) return false;
                if (accept_(n)) {
                    uint64_t cur = best_.load();
                    while (n < cur && !best_.compare_exchange_weak(cur, n)) {
                    }
                    return false; // rest of this segment is larger
                }
                return true;
            });
        }
    }

    uint64_t start_;
    uint64_t bound_;
    uint32_t workers_;
    Enumerate enumerate_;
    std::function<bool(uint64_t)> accept_;
    uint64_t segment_size_;
    std::atomic<uint64_t> next_segment_{0};
    std::atomic<uint64_t> best_{kU64Max};
};

uint64_t default_scan_bound(uint64_t k, const PrimeTable& primes) {
    if (k > kExactCutoff)
        throw std::invalid_argument(
            "search: no default scan bound past the exact-arithmetic cutoff; "
            "pass scan_bound explicitly");
    Rational estimate = ghat(k, primes);
    BigInt ceiling;
    mpz_cdiv_q(ceiling.get_mpz_t(), estimate.get_num().get_mpz_t(),
               estimate.get_den().get_mpz_t());
    ceiling *= 10;
    if (!ceiling.fits_ulong_p())
        throw std::invalid_argument(
            "search: default scan bound 10*ceil(ghat) exceeds the 64-bit "
            "search range; this k is beyond desk scale");
    return std::max<uint64_t>(ceiling.get_ui(), k + 2);
}

uint64_t validate_and_resolve_bound(const SearchConfig& config, const PrimeTable& primes) {
    if (config.k < 2) throw std::invalid_argument("search: require k >= 2");
    primes.require_limit(config.k, "search");
    if (config.wheel_budget < 2)
        throw std::invalid_argument("search: wheel_budget must be at least 2");
    uint64_t bound =
        config.scan_bound ? config.scan_bound : default_scan_bound(config.k, primes);
    if (bound <= config.k + 1)
        throw std::invalid_argument("search: scan_bound must exceed k+1");
    if (bound >= kU64Max - 1)
        throw std::invalid_argument("search: scan_bound must be below 2^64-1");
    return bound;
}

std::vector<CertificateEntry> build_certificate(uint64_t k, uint64_t g,
                                                const PrimeTable& primes) {
    std::vector<CertificateEntry> cert;
    for (uint64_t p : primes.primes) {
        if (p > k) break;
        CertificateEntry entry;
        entry.prime = p;
        entry.k_digits = digits(k, p).digits;
        entry.g_digits = digits(g, p).digits;
        cert.push_back(std::move(entry));
    }
    return cert;
}

[[noreturn]] void not_found(uint64_t k, uint64_t bound) {
    throw NotFoundError("search: no qualifying n in (" + std::to_string(k + 1) +
                        ", " + std::to_string(bound) + "]; raise scan_bound");
}

} // namespace

std::vector<uint64_t> allowed_residues(uint64_t k, uint64_t p) {
    if (p < 2) throw std::invalid_argument("allowed_residues: base must be >= 2");
    if (p > k) throw std::invalid_argument("allowed_residues: require p <= k");
    std::vector<uint64_t> ds = digits(k, p).digits;
    size_t width = ds.size();

    uint64_t count = 1;
    for (uint64_t d : ds) count *= p - d;

    // Odometer over digit choices, most significant first, so the output
    // is ascending without a sort.
    std::vector<uint64_t> current(ds.rbegin(), ds.rend());
    std::vector<uint64_t> place(width); // place value per odometer position
    uint64_t value = 0;
    {
        uint64_t pv = 1;
        for (size_t i = 0; i < width; ++i) {
            place[width - 1 - i] = pv;
            pv *= p;
        }
        for (size_t i = 0; i < width; ++i) value += current[i] * place[i];
    }

    std::vector<uint64_t> out;
    out.reserve(count);
    while (true) {
        out.push_back(value);
        size_t pos = width;
        while (pos-- > 0) {
            if (current[pos] + 1 <= p - 1) {
                current[pos] += 1;
                value += place[pos];
                break;
            }
            // reset to this position's minimum digit (digit of k)
            uint64_t min_digit = ds[width - 1 - pos];
            value -= (current[pos] - min_digit) * place[pos];
            current[pos] = min_digit;
            if (pos == 0) return out;
        }
    }
}

SearchResult g_naive(const SearchConfig& config, const PrimeTable& primes) {
    auto t0 = std::chrono::steady_clock::now();
    uint64_t k = config.k;
    uint64_t bound = validate_and_resolve_bound(config, primes);

    std::vector<uint64_t> test_primes;
    for (uint64_t p : primes.primes) {
        if (p > k) break;
        test_primes.push_back(p);
    }

    SegmentScan scan(
        k + 2, bound, config.workers,
        [](uint64_t lo, uint64_t hi, const std::function<bool(uint64_t)>& visit) {
            for (uint64_t n = lo; n < hi; ++n)
                if (!visit(n)) return;
        },
        [&](uint64_t n) {
            for (uint64_t p : test_primes)
                if (!dominates(n, k, p)) return false;
            return true;
        });
    uint64_t g = scan.run();
    if (g == kU64Max || g > bound) not_found(k, bound);

    SearchResult result;
    result.k = k;
    result.g = g;
    result.candidates_tested = g - (k + 1);
    result.certificate = build_certificate(k, g, primes);
    result.elapsed = std::chrono::steady_clock::now() - t0;
    return result;
}

SearchResult g_wheel(const SearchConfig& config, const PrimeTable& primes) {
    auto t0 = std::chrono::steady_clock::now();
    uint64_t k = config.k;
    uint64_t bound = validate_and_resolve_bound(config, primes);

    Wheel wheel = build_wheel(k, primes, config.wheel_budget);

    // Remaining primes ordered by descending least-digit rejection
    // probability d0/p; ties go to the larger prime.
    struct Remaining {
        uint64_t p;
        double reject;
    };
    std::vector<Remaining> rest;
    for (uint64_t p : primes.primes) {
        if (p > k) break;
        if (std::binary_search(wheel.folded_primes.begin(), wheel.folded_primes.end(), p))
            continue;
        rest.push_back({p, static_cast<double>(k % p) / static_cast<double>(p)});
    }
    std::stable_sort(rest.begin(), rest.end(), [](const Remaining& a, const Remaining& b) {
        if (a.reject != b.reject) return a.reject > b.reject;
        return a.p > b.p;
    });

    const uint64_t W = wheel.modulus;
    const std::vector<uint64_t>& residues = wheel.residues;
    SegmentScan scan(
        k + 2, bound, config.workers,
        [&](uint64_t lo, uint64_t hi, const std::function<bool(uint64_t)>& visit) {
            for (uint64_t j = lo / W;; ++j) {
                __uint128_t base = static_cast<__uint128_t>(j) * W;
                if (base >= hi) return;
                size_t i = 0;
                if (base < lo) {
                    uint64_t offset = lo - static_cast<uint64_t>(base);
                    i = std::lower_bound(residues.begin(), residues.end(), offset) -
                        residues.begin();
                }
                for (; i < residues.size(); ++i) {
                    __uint128_t n = base + residues[i];
                    if (n >= hi) return;
                    if (!visit(static_cast<uint64_t>(n))) return;
                }
            }
        },
        [&](uint64_t n) {
            for (const Remaining& r : rest)
                if (!dominates(n, k, r.p)) return false;
            return true;
        });
    uint64_t g = scan.run();
    if (g == kU64Max || g > bound) not_found(k, bound);

    SearchResult result;
    result.k = k;
    result.g = g;
    result.candidates_tested = wheel.count_up_to(g) - wheel.count_up_to(k + 1);
    result.certificate = build_certificate(k, g, primes);
    result.elapsed = std::chrono::steady_clock::now() - t0;
    return result;
}

SearchResult search(const SearchConfig& config, const PrimeTable& primes) {
    return config.method == SearchMethod::naive ? g_naive(config, primes)
                                                : g_wheel(config, primes);
}

} // namespace eslab
