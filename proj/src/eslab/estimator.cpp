#include "eslab/estimator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "eslab/digits.hpp"
#include "eslab/kahan.hpp"

namespace eslab {

namespace {

void check_exact_range(uint64_t k, const PrimeTable& primes, const char* caller) {
    if (k < 2)
        throw std::invalid_argument(std::string(caller) + ": require k >= 2");
    if (k > kExactCutoff)
        throw std::invalid_argument(std::string(caller) + ": k=" + std::to_string(k) +
                                    " exceeds the exact-arithmetic cutoff " +
                                    std::to_string(kExactCutoff) +
                                    "; use the log-space path");
    primes.require_limit(k, caller);
}

// Per-prime contribution to the modulus (p^digit_count) and to the residue
// count (product of p - digit). Both fit in 64 bits for any k within the
// exact cutoff since p^(digit_count - 1) <= k.
struct PrimeFactors {
    uint64_t modulus_part;
    uint64_t residues_part;
};

PrimeFactors prime_parts(uint64_t k, uint64_t p) {
    PrimeFactors out{1, 1};
    uint64_t kk = k;
    while (true) {
        out.modulus_part *= p;
        out.residues_part *= p - kk % p;
        kk /= p;
        if (kk == 0) break;
    }
    return out;
}

} // namespace

BigInt prime_power_modulus(uint64_t k, const PrimeTable& primes) {
    check_exact_range(k, primes, "prime_power_modulus");
    std::vector<uint64_t> factors;
    for (uint64_t p : primes.primes) {
        if (p > k) break;
        factors.push_back(prime_parts(k, p).modulus_part);
    }
    return product_tree(factors);
}

BigInt dominating_residue_count(uint64_t k, const PrimeTable& primes) {
    check_exact_range(k, primes, "dominating_residue_count");
    std::vector<uint64_t> factors;
    for (uint64_t p : primes.primes) {
        if (p > k) break;
        factors.push_back(prime_parts(k, p).residues_part);
    }
    return product_tree(factors);
}

Rational ghat(uint64_t k, const PrimeTable& primes) {
    check_exact_range(k, primes, "ghat");
    return make_rational(prime_power_modulus(k, primes),
                         dominating_residue_count(k, primes));
}

double ghat_log(uint64_t k, const PrimeTable& primes) {
    if (k < 2) throw std::invalid_argument("ghat_log: require k >= 2");
    primes.require_limit(k, "ghat_log");
    KahanSum sum;
    for (uint64_t p : primes.primes) {
        if (p > k) break;
        double logp = std::log(static_cast<double>(p));
        uint64_t kk = k;
        while (true) {
            sum.add(logp - std::log(static_cast<double>(p - kk % p)));
            kk /= p;
            if (kk == 0) break;
        }
    }
    return sum.value();
}

EstimateBreakdown decompose(uint64_t k, const PrimeTable& primes) {
    if (k < 4) throw std::invalid_argument("decompose: require k >= 4");
    primes.require_limit(k, "decompose");

    EstimateBreakdown out;
    out.k = k;
    uint64_t root = isqrt64(k);

    KahanSum small, f1, f0;
    for (uint64_t p : primes.primes) {
        if (p > k) break;
        double logp = std::log(static_cast<double>(p));
        if (p <= root) {
            uint64_t kk = k;
            while (true) {
                small.add(logp - std::log(static_cast<double>(p - kk % p)));
                kk /= p;
                if (kk == 0) break;
            }
        } else {
            // Exactly two digits here: k = d1*p + d0 with 1 <= d1 < p.
            uint64_t d0 = k % p;
            uint64_t d1 = k / p;
            f0.add(logp - std::log(static_cast<double>(p - d0)));
            f1.add(logp - std::log(static_cast<double>(p - d1)));
        }
    }
    out.log_f_small = small.value();
    out.log_f1 = f1.value();
    out.log_f0 = f0.value();
    out.log_ghat = ghat_log(k, primes);

    if (k <= kExactCutoff) {
        out.modulus = prime_power_modulus(k, primes);
        out.residue_count = dominating_residue_count(k, primes);
        out.ghat = make_rational(*out.modulus, *out.residue_count);
    }
    return out;
}

RatioCertificate ratio_certificate(uint64_t k, const PrimeTable& primes) {
    if (k < 2) throw std::invalid_argument("ratio_certificate: require k >= 2");
    if (k + 1 > kExactCutoff)
        throw std::invalid_argument("ratio_certificate: k exceeds exact cutoff");
    primes.require_limit(k + 1, "ratio_certificate");
    if (!primes.contains(k + 1))
        throw std::invalid_argument("ratio_certificate: k+1 = " +
                                    std::to_string(k + 1) + " is not prime");

    RatioCertificate cert;
    cert.k = k;

    BigInt mod_k = prime_power_modulus(k, primes);
    BigInt mod_k1 = prime_power_modulus(k + 1, primes);
    BigInt res_k = dominating_residue_count(k, primes);
    BigInt res_k1 = dominating_residue_count(k + 1, primes);

    BigInt q(static_cast<unsigned long>(k + 1));
    cert.m_identity_ok = (mod_k1 == q * q * mod_k);

    // digits(k+1, p) must equal digits(k, p) with the least digit bumped;
    // in particular the least digit of k is at most p-2 for every p <= k.
    cert.digit_increment_ok = true;
    for (uint64_t p : primes.primes) {
        if (p > k) break;
        DigitVector dk = digits(k, p);
        DigitVector dk1 = digits(k + 1, p);
        bool ok = dk.digits[0] <= p - 2 && dk1.digits.size() == dk.digits.size() &&
                  dk1.digits[0] == dk.digits[0] + 1;
        for (size_t i = 1; ok && i < dk.digits.size(); ++i)
            ok = dk1.digits[i] == dk.digits[i];
        if (!ok) {
            cert.digit_increment_ok = false;
            break;
        }
    }

    // Closed form for res_k / res_k1: (1/(k(k+1))) * prod (p - d0) / (p - d0 - 1).
    // d0 = p-1 would mean p | k+1, impossible for p <= k when k+1 is prime.
    std::vector<uint64_t> nums, dens;
    bool den_positive = true;
    for (uint64_t p : primes.primes) {
        if (p > k) break;
        uint64_t d0 = k % p;
        nums.push_back(p - d0);
        den_positive = den_positive && d0 + 1 < p;
        dens.push_back(p - d0 - 1);
    }
    if (den_positive) {
        BigInt closed_num = product_tree(nums);
        BigInt closed_den = product_tree(dens) * BigInt(static_cast<unsigned long>(k)) * q;
        cert.r_identity_ok =
            (make_rational(res_k, res_k1) == make_rational(closed_num, closed_den));
    }

    cert.ratio = make_rational(mod_k1 * res_k, mod_k * res_k1);

    std::vector<uint64_t> ps, ps1;
    for (uint64_t p : primes.primes) {
        if (p > k) break;
        ps.push_back(p);
        ps1.push_back(p - 1);
    }
    cert.mertens_lower_bound =
        make_rational(q * product_tree(ps), BigInt(static_cast<unsigned long>(k)) * product_tree(ps1));
    cert.bound_ok = (cert.ratio >= cert.mertens_lower_bound);

    return cert;
}

} // namespace eslab
