// Acceptance harness: one pass/fail line per criterion, with wall-time
// budgets enforced. Run with no arguments for the full battery or with
// --criterion N for a single one. Exit code 0 iff everything run passed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "eslab/asymptotics.hpp"
#include "eslab/digits.hpp"
#include "eslab/estimator.hpp"
#include "eslab/primes.hpp"
#include "eslab/searcher.hpp"

using namespace eslab;

namespace {

const PrimeTable& table_1m() {
    static PrimeTable table = primes_up_to(1000000);
    return table;
}

bool oracle_qualifies(uint64_t n, uint64_t k, const PrimeTable& primes) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    for (uint64_t p : primes.primes) {
        if (p > k) break;
        if (mpz_divisible_ui_p(b.get_mpz_t(), p)) return false;
    }
    return true;
}

// --- criterion bodies ------------------------------------------------

bool criterion_constant(std::string& detail) {
    ConstantResult result = growth_constant(5e-8);
    const double stated = 0.7884305;
    bool width_ok = result.upper - result.lower <= 5e-8 * (1 + 1e-9);
    bool contains = result.lower <= stated && stated <= result.upper;
    std::ostringstream out;
    out.precision(12);
    out << "bracket [" << result.lower << ", " << result.upper << "] (width ok: "
        << (width_ok ? "yes" : "no") << ", terms " << result.terms_used
        << ") contains 0.7884305: " << (contains ? "yes" : "no");
    if (!contains)
        out << "; the series evaluates to " << result.value_text
            << ", so the stated reference digits lie 1.0e-4 outside any "
               "rigorous bracket of this width";
    detail = out.str();
    return width_ok && contains;
}

bool criterion_ratio_identities(std::string& detail) {
    PrimeTable table = primes_up_to(10001);
    uint64_t checked = 0, failures = 0;
    for (uint64_t q : table.primes) {
        if (q < 3 || q > 10000) continue;
        RatioCertificate cert = ratio_certificate(q - 1, table);
        ++checked;
        if (!(cert.m_identity_ok && cert.r_identity_ok && cert.digit_increment_ok &&
              cert.bound_ok))
            ++failures;
    }
    detail = std::to_string(checked) + " prime steps checked, " +
             std::to_string(failures) + " failures";
    return failures == 0 && checked == 1228;
}

bool criterion_estimator_consistency(std::string& detail) {
    PrimeTable table = primes_up_to(2000);
    uint64_t exact_mismatch = 0, log_mismatch = 0, partition_mismatch = 0;
    for (uint64_t k = 2; k <= 2000; ++k) {
        Rational direct = ghat(k, table);
        Rational chained(1);
        for (uint64_t p : table.primes) {
            if (p > k) break;
            uint64_t kk = k;
            while (true) {
                chained *= make_rational(BigInt(static_cast<unsigned long>(p)),
                                         BigInt(static_cast<unsigned long>(p - kk % p)));
                kk /= p;
                if (kk == 0) break;
            }
        }
        if (direct != chained) ++exact_mismatch;

        double logspace = ghat_log(k, table);
        double reconstructed = std::exp(logspace);
        double exact_value = mpq_get_d(direct.get_mpq_t());
        if (std::fabs(reconstructed - exact_value) > 1e-9 * exact_value)
            ++log_mismatch;

        if (k >= 4) {
            EstimateBreakdown b = decompose(k, table);
            double total = b.log_f_small + b.log_f1 + b.log_f0;
            if (std::fabs(total - b.log_ghat) >
                1e-12 * std::max(1.0, std::fabs(b.log_ghat)))
                ++partition_mismatch;
        }
    }
    detail = "exact mismatches " + std::to_string(exact_mismatch) + ", log path " +
             std::to_string(log_mismatch) + ", decompose partition " +
             std::to_string(partition_mismatch) + " (k = 2..2000)";
    return exact_mismatch == 0 && log_mismatch == 0 && partition_mismatch == 0;
}

bool criterion_search(std::string& detail) {
    PrimeTable table = primes_up_to(50);
    uint64_t failures = 0;
    std::ostringstream notes;

    struct Spot {
        uint64_t k, g;
    };
    for (Spot spot : {Spot{2, 6}, Spot{3, 7}, Spot{4, 7}, Spot{5, 23}}) {
        SearchConfig config;
        config.k = spot.k;
        config.method = SearchMethod::naive;
        if (g_naive(config, table).g != spot.g) {
            ++failures;
            notes << " spot(k=" << spot.k << ")";
        }
    }

    for (uint64_t k = 2; k <= 30; ++k) {
        SearchConfig config;
        config.k = k;
        config.method = SearchMethod::naive;
        SearchResult naive = g_naive(config, table);
        config.method = SearchMethod::wheel;
        SearchResult wheel = g_wheel(config, table);
        if (naive.g != wheel.g) {
            ++failures;
            notes << " methods(k=" << k << ")";
            continue;
        }

        // certificate re-verification
        for (const CertificateEntry& entry : wheel.certificate)
            if (!dominates(wheel.g, k, entry.prime)) {
                ++failures;
                notes << " cert(k=" << k << ")";
            }

        if (k <= 25) { // exact trial division of binomial(g, k)
            mpz_class b;
            mpz_bin_uiui(b.get_mpz_t(), wheel.g, k);
            for (uint64_t p : table.primes) {
                if (p > k) break;
                if (mpz_divisible_ui_p(b.get_mpz_t(), p)) {
                    ++failures;
                    notes << " divisor(k=" << k << ",p=" << p << ")";
                }
            }
        }

        if (k <= 20) { // minimality against the exact oracle
            for (uint64_t n = k + 2; n < naive.g; ++n)
                if (oracle_qualifies(n, k, table)) {
                    ++failures;
                    notes << " minimality(k=" << k << ",n=" << n << ")";
                }
        }
    }
    detail = failures == 0 ? "wheel == naive on k=2..30, certificates and "
                             "minimality verified, spot values match"
                           : "failures:" + notes.str();
    return failures == 0;
}

bool criterion_pieces(std::string& detail) {
    std::ostringstream out;
    bool ok = true;
    for (uint64_t k : {1000, 10000, 100000, 1000000}) {
        F0Pieces pieces = f0_pieces(k, table_1m());
        double total = pieces.piece_tail + pieces.piece_logp + pieces.piece_neg;
        double rel = std::fabs(total - pieces.f0_direct) /
                     std::max(1.0, std::fabs(pieces.f0_direct));
        if (rel > 1e-9) {
            ok = false;
            out << " partition(k=" << k << ", rel=" << rel << ")";
        }
        if (k == 1000000) {
            double share = pieces.piece_logp / static_cast<double>(k);
            if (share < 0.9 || share > 1.1) {
                ok = false;
                out << " logp-share=" << share;
            } else {
                out << "logp/k = " << share;
            }
        }
    }
    detail = "partition to 1e-9 at k in {1e3,1e4,1e5,1e6}; " + out.str();
    return ok;
}

bool criterion_calculus(std::string& detail) {
    // The fixed 1e-6 step bounds how close u may sit to the log singularity
    // at u=1: truncation is ~(h^2/6)/(u-1)^2, so the grid keeps u-1 >= 2.5e-3
    // (the stated example points use u-1 = 0.5/a with a <= 10).
    double worst_residual = 0;
    for (uint64_t a : {1, 2, 3, 5, 10, 50, 100})
        for (double t : {0.25, 0.5, 0.75, 1.0}) {
            double u = 1.0 + t / static_cast<double>(a);
            worst_residual = std::max(worst_residual, antiderivative_check(a, u));
        }
    worst_residual = std::max(worst_residual, antiderivative_check(1, 1.5));
    worst_residual = std::max(worst_residual, antiderivative_check(3, 1.2));
    worst_residual = std::max(worst_residual, antiderivative_check(10, 1.05));
    double worst_quadrature = 0;
    for (uint64_t a = 1; a <= 1000; ++a) {
        auto [quadrature, closed_form] = integral_identity_check(a);
        worst_quadrature = std::max(worst_quadrature, std::fabs(quadrature - closed_form));
    }
    std::ostringstream out;
    out << "max antiderivative residual " << worst_residual
        << ", max quadrature gap " << worst_quadrature;
    detail = out.str();
    return worst_residual < 1e-6 && worst_quadrature < 1e-8;
}

bool criterion_analytic_diagnostics(std::string& detail) {
    double psi_ratio = chebyshev_weighted_sum(1000000, table_1m()) / 1e6;
    double mertens_ratio = mertens_product(1000000, table_1m()) / std::log(1e6);
    double target = std::exp(0.5772156649015328606);
    double mertens_err = std::fabs(mertens_ratio / target - 1.0);
    std::ostringstream out;
    out << "psi(1e6)/1e6 = " << psi_ratio << ", mertens/log vs e^gamma off by "
        << mertens_err * 100 << "%";
    detail = out.str();
    return psi_ratio >= 0.95 && psi_ratio <= 1.05 && mertens_err < 0.01;
}

bool criterion_convergence(std::string& detail) {
    double constant = growth_constant(1e-9).value;
    auto rows = convergence_table({1000, 10000, 100000, 1000000}, table_1m());
    double first = std::fabs(rows.front().normalized - constant);
    double last = std::fabs(rows.back().normalized - constant);
    std::ostringstream out;
    out.precision(6);
    out << "|normalized(1e6) - c| = " << last << " < |normalized(1e3) - c| = " << first;
    detail = out.str();
    return last < first;
}

bool criterion_fixtures(std::string& detail) {
    PrimeTable table = primes_up_to(377);
    Rational g376 = ghat(376, table);
    Rational g377 = ghat(377, table);
    const char* known376 = "7778804220120654420924631668091";
    const char* known377 = "5973303871796437264595936954237";
    double v376 = mpq_get_d(g376.get_mpq_t());
    double v377 = mpq_get_d(g377.get_mpq_t());
    bool decreasing = g377 < g376;
    std::ostringstream out;
    out.precision(6);
    out << "g(376) = " << known376 << ", ghat(376) ~ " << v376
        << "; g(377) = " << known377 << ", ghat(377) ~ " << v377
        << "; ghat(377) < ghat(376): " << (decreasing ? "yes" : "no");
    detail = out.str();
    return decreasing;
}

struct Criterion {
    int id;
    const char* name;
    double time_limit_seconds;
    std::function<bool(std::string&)> run;
};

const std::vector<Criterion>& criteria() {
    static std::vector<Criterion> all = {
        {1, "constant bracket reproduces the stated digits", 10, criterion_constant},
        {2, "ratio identities at every prime k+1 <= 1e4", 300, criterion_ratio_identities},
        {3, "estimator self-consistency for k = 2..2000", 120, criterion_estimator_consistency},
        {4, "search oracle equivalence and certificates", 300, criterion_search},
        {5, "three-piece partition of log_f0", 120, criterion_pieces},
        {6, "antiderivative and quadrature identities", 60, criterion_calculus},
        {7, "psi and Mertens diagnostics at 1e6", 30, criterion_analytic_diagnostics},
        {8, "normalized log ghat trends toward the constant", 900, criterion_convergence},
        {9, "ghat at the fixture ks orders like the known g values", 5, criterion_fixtures},
    };
    return all;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            only = std::atoi(argv[++i]);
    }

    int failures = 0, ran = 0;
    for (const Criterion& criterion : criteria()) {
        if (only != 0 && criterion.id != only) continue;
        ++ran;
        std::string detail;
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        bool in_time = elapsed < criterion.time_limit_seconds;
        bool pass = ok && in_time;
        if (!pass) ++failures;
        std::printf("[%s] criterion %d: %s — %s (%.2f s%s)\n", pass ? "PASS" : "FAIL",
                    criterion.id, criterion.name, detail.c_str(), elapsed,
                    in_time ? "" : ", over budget");
        std::fflush(stdout);
    }
    if (ran == 0) {
        std::fprintf(stderr, "unknown criterion id\n");
        return 2;
    }
    return failures > 0 ? 1 : 0;
}
