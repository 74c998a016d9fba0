#include "eslab.h"

#include <cstdio>
#include <cstring>
#include <new>
#include <string>

#include "eslab/asymptotics.hpp"
#include "eslab/digits.hpp"
#include "eslab/errors.hpp"
#include "eslab/estimator.hpp"
#include "eslab/primes.hpp"
#include "eslab/searcher.hpp"
#include "eslab/version.hpp"

struct eslab_primes {
    eslab::PrimeTable table;
};

struct eslab_ratio_certificate {
    eslab::RatioCertificate cert;
};

struct eslab_search_result {
    eslab::SearchResult result;
};

namespace {

thread_local std::string t_last_error;

void set_error(const std::string& message) { t_last_error = message; }

// Runs a callable, translating exceptions into status codes.
template <typename Fn>
eslab_status guarded(Fn&& fn) {
    try {
        fn();
        t_last_error.clear();
        return ESLAB_OK;
    } catch (const eslab::NotFoundError& e) {
        set_error(e.what());
        return ESLAB_NOT_FOUND;
    } catch (const eslab::ToleranceError& e) {
        set_error(e.what());
        return ESLAB_TOLERANCE;
    } catch (const eslab::ResourceError& e) {
        set_error(e.what());
        return ESLAB_RESOURCE;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return ESLAB_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return ESLAB_NO_MEMORY;
    } catch (const std::exception& e) {
        set_error(e.what());
        return ESLAB_INTERNAL;
    }
}

eslab_status require(bool condition, const char* message) {
    if (condition) return ESLAB_OK;
    set_error(message);
    return ESLAB_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

eslab_status copy_digits(const std::vector<uint64_t>& digits, uint64_t* buffer,
                         size_t capacity, size_t* len) {
    if (len) *len = digits.size();
    if (capacity < digits.size()) {
        set_error("digit buffer too small");
        return ESLAB_BUFFER_TOO_SMALL;
    }
    std::memcpy(buffer, digits.data(), digits.size() * sizeof(uint64_t));
    return ESLAB_OK;
}

} // namespace

extern "C" {

const char* eslab_version(void) { return eslab::kVersion; }

const char* eslab_last_error(void) { return t_last_error.c_str(); }

void eslab_string_free(char* s) { delete[] s; }

void eslab_u64_free(uint64_t* p) { delete[] p; }

eslab_status eslab_primes_create(uint64_t limit, eslab_primes** out) {
    if (eslab_status s = require(out != nullptr, "out pointer is null"); s != ESLAB_OK)
        return s;
    return guarded([&] {
        auto* handle = new eslab_primes{eslab::primes_up_to(limit)};
        *out = handle;
    });
}

void eslab_primes_free(eslab_primes* primes) { delete primes; }

uint64_t eslab_primes_limit(const eslab_primes* primes) {
    return primes ? primes->table.limit : 0;
}

uint64_t eslab_primes_count(const eslab_primes* primes) {
    return primes ? primes->table.count() : 0;
}

eslab_status eslab_primes_get(const eslab_primes* primes, uint64_t index,
                              uint64_t* out) {
    if (eslab_status s = require(primes && out, "null argument"); s != ESLAB_OK)
        return s;
    if (eslab_status s = require(index < primes->table.count(), "index out of range");
        s != ESLAB_OK)
        return s;
    *out = primes->table.primes[index];
    return ESLAB_OK;
}

eslab_status eslab_digits(uint64_t k, uint64_t base, uint64_t* buffer,
                          size_t capacity, size_t* len) {
    if (eslab_status s = require(buffer || capacity == 0, "null buffer"); s != ESLAB_OK)
        return s;
    eslab_status status = ESLAB_OK;
    eslab_status run = guarded([&] {
        status = copy_digits(eslab::digits(k, base).digits, buffer, capacity, len);
    });
    return run != ESLAB_OK ? run : status;
}

eslab_status eslab_dominates(uint64_t n, uint64_t k, uint64_t p, int* out) {
    if (eslab_status s = require(out != nullptr, "out pointer is null"); s != ESLAB_OK)
        return s;
    return guarded([&] { *out = eslab::dominates(n, k, p) ? 1 : 0; });
}

eslab_status eslab_binomial_prime_free(uint64_t n, uint64_t k, uint64_t limit,
                                       const eslab_primes* primes, int* out) {
    if (eslab_status s = require(primes && out, "null argument"); s != ESLAB_OK)
        return s;
    return guarded(
        [&] { *out = eslab::binomial_prime_free(n, k, limit, primes->table) ? 1 : 0; });
}

eslab_status eslab_prime_power_modulus(uint64_t k, const eslab_primes* primes,
                                       char** decimal) {
    if (eslab_status s = require(primes && decimal, "null argument"); s != ESLAB_OK)
        return s;
    return guarded([&] {
        *decimal = dup_string(eslab::to_decimal(eslab::prime_power_modulus(k, primes->table)));
    });
}

eslab_status eslab_dominating_residue_count(uint64_t k, const eslab_primes* primes,
                                            char** decimal) {
    if (eslab_status s = require(primes && decimal, "null argument"); s != ESLAB_OK)
        return s;
    return guarded([&] {
        *decimal =
            dup_string(eslab::to_decimal(eslab::dominating_residue_count(k, primes->table)));
    });
}

eslab_status eslab_ghat(uint64_t k, const eslab_primes* primes, char** numerator,
                        char** denominator) {
    if (eslab_status s = require(primes && numerator && denominator, "null argument");
        s != ESLAB_OK)
        return s;
    return guarded([&] {
        eslab::Rational q = eslab::ghat(k, primes->table);
        *numerator = dup_string(q.get_num().get_str(10));
        *denominator = dup_string(q.get_den().get_str(10));
    });
}

eslab_status eslab_ghat_log(uint64_t k, const eslab_primes* primes, double* out) {
    if (eslab_status s = require(primes && out, "null argument"); s != ESLAB_OK)
        return s;
    return guarded([&] { *out = eslab::ghat_log(k, primes->table); });
}

eslab_status eslab_ghat_compare(uint64_t k1, uint64_t k2, const eslab_primes* primes,
                                int* out) {
    if (eslab_status s = require(primes && out, "null argument"); s != ESLAB_OK)
        return s;
    return guarded([&] {
        int c = mpq_cmp(eslab::ghat(k1, primes->table).get_mpq_t(),
                        eslab::ghat(k2, primes->table).get_mpq_t());
        *out = c < 0 ? -1 : (c > 0 ? 1 : 0);
    });
}

eslab_status eslab_decompose(uint64_t k, const eslab_primes* primes,
                             eslab_breakdown* out) {
    if (eslab_status s = require(primes && out, "null argument"); s != ESLAB_OK)
        return s;
    return guarded([&] {
        eslab::EstimateBreakdown b = eslab::decompose(k, primes->table);
        out->log_ghat = b.log_ghat;
        out->log_f_small = b.log_f_small;
        out->log_f1 = b.log_f1;
        out->log_f0 = b.log_f0;
        out->exact_available = b.ghat.has_value() ? 1 : 0;
    });
}

eslab_status eslab_ratio_certificate_create(uint64_t k, const eslab_primes* primes,
                                            eslab_ratio_certificate** out) {
    if (eslab_status s = require(primes && out, "null argument"); s != ESLAB_OK)
        return s;
    return guarded([&] {
        *out = new eslab_ratio_certificate{eslab::ratio_certificate(k, primes->table)};
    });
}

void eslab_ratio_certificate_free(eslab_ratio_certificate* cert) { delete cert; }

int eslab_ratio_cert_m_identity_ok(const eslab_ratio_certificate* cert) {
    return cert && cert->cert.m_identity_ok ? 1 : 0;
}

int eslab_ratio_cert_r_identity_ok(const eslab_ratio_certificate* cert) {
    return cert && cert->cert.r_identity_ok ? 1 : 0;
}

int eslab_ratio_cert_digit_increment_ok(const eslab_ratio_certificate* cert) {
    return cert && cert->cert.digit_increment_ok ? 1 : 0;
}

int eslab_ratio_cert_bound_ok(const eslab_ratio_certificate* cert) {
    return cert && cert->cert.bound_ok ? 1 : 0;
}

eslab_status eslab_ratio_cert_ratio(const eslab_ratio_certificate* cert,
                                    char** numerator, char** denominator) {
    if (eslab_status s = require(cert && numerator && denominator, "null argument");
        s != ESLAB_OK)
        return s;
    return guarded([&] {
        *numerator = dup_string(cert->cert.ratio.get_num().get_str(10));
        *denominator = dup_string(cert->cert.ratio.get_den().get_str(10));
    });
}

eslab_status eslab_ratio_cert_bound(const eslab_ratio_certificate* cert,
                                    char** numerator, char** denominator) {
    if (eslab_status s = require(cert && numerator && denominator, "null argument");
        s != ESLAB_OK)
        return s;
    return guarded([&] {
        *numerator = dup_string(cert->cert.mertens_lower_bound.get_num().get_str(10));
        *denominator = dup_string(cert->cert.mertens_lower_bound.get_den().get_str(10));
    });
}

eslab_status eslab_search(const eslab_search_config* config,
                          const eslab_primes* primes, eslab_search_result** out) {
    if (eslab_status s = require(config && primes && out, "null argument");
        s != ESLAB_OK)
        return s;
    return guarded([&] {
        eslab::SearchConfig cfg;
        cfg.k = config->k;
        cfg.scan_bound = config->scan_bound;
        cfg.method = config->use_wheel ? eslab::SearchMethod::wheel
                                       : eslab::SearchMethod::naive;
        if (config->wheel_budget) cfg.wheel_budget = config->wheel_budget;
        cfg.workers = config->workers ? config->workers : 1;
        *out = new eslab_search_result{eslab::search(cfg, primes->table)};
    });
}

void eslab_search_result_free(eslab_search_result* result) { delete result; }

uint64_t eslab_search_result_g(const eslab_search_result* result) {
    return result ? result->result.g : 0;
}

uint64_t eslab_search_result_candidates_tested(const eslab_search_result* result) {
    return result ? result->result.candidates_tested : 0;
}

double eslab_search_result_elapsed_seconds(const eslab_search_result* result) {
    return result ? result->result.elapsed.count() : 0.0;
}

size_t eslab_search_result_cert_count(const eslab_search_result* result) {
    return result ? result->result.certificate.size() : 0;
}

eslab_status eslab_search_result_cert_prime(const eslab_search_result* result,
                                            size_t index, uint64_t* prime) {
    if (eslab_status s = require(result && prime, "null argument"); s != ESLAB_OK)
        return s;
    if (eslab_status s =
            require(index < result->result.certificate.size(), "index out of range");
        s != ESLAB_OK)
        return s;
    *prime = result->result.certificate[index].prime;
    return ESLAB_OK;
}

eslab_status eslab_search_result_cert_digits(const eslab_search_result* result,
                                             size_t index, int which,
                                             uint64_t* buffer, size_t capacity,
                                             size_t* len) {
    if (eslab_status s = require(result && (buffer || capacity == 0), "null argument");
        s != ESLAB_OK)
        return s;
    if (eslab_status s =
            require(index < result->result.certificate.size(), "index out of range");
        s != ESLAB_OK)
        return s;
    const eslab::CertificateEntry& entry = result->result.certificate[index];
    return copy_digits(which == 0 ? entry.k_digits : entry.g_digits, buffer, capacity,
                       len);
}

eslab_status eslab_allowed_residues(uint64_t k, uint64_t p, uint64_t** out,
                                    size_t* count) {
    if (eslab_status s = require(out && count, "null argument"); s != ESLAB_OK)
        return s;
    return guarded([&] {
        std::vector<uint64_t> residues = eslab::allowed_residues(k, p);
        *count = residues.size();
        *out = new uint64_t[residues.size()];
        std::memcpy(*out, residues.data(), residues.size() * sizeof(uint64_t));
    });
}

eslab_status eslab_growth_constant(double tolerance, eslab_constant* out) {
    if (eslab_status s = require(out != nullptr, "out pointer is null"); s != ESLAB_OK)
        return s;
    return guarded([&] {
        eslab::ConstantResult r = eslab::growth_constant(tolerance);
        out->value = r.value;
        out->lower = r.lower;
        out->upper = r.upper;
        out->terms_used = r.terms_used;
        std::snprintf(out->value_text, sizeof out->value_text, "%s",
                      r.value_text.c_str());
    });
}

eslab_status eslab_chebyshev_weighted_sum(uint64_t x, const eslab_primes* primes,
                                          double* out) {
    if (eslab_status s = require(primes && out, "null argument"); s != ESLAB_OK)
        return s;
    return guarded([&] { *out = eslab::chebyshev_weighted_sum(x, primes->table); });
}

eslab_status eslab_mertens_product(uint64_t x, const eslab_primes* primes,
                                   double* out) {
    if (eslab_status s = require(primes && out, "null argument"); s != ESLAB_OK)
        return s;
    return guarded([&] { *out = eslab::mertens_product(x, primes->table); });
}

eslab_status eslab_f0_pieces_compute(uint64_t k, const eslab_primes* primes,
                                     eslab_f0_pieces* out) {
    if (eslab_status s = require(primes && out, "null argument"); s != ESLAB_OK)
        return s;
    return guarded([&] {
        eslab::F0Pieces p = eslab::f0_pieces(k, primes->table);
        out->piece_tail = p.piece_tail;
        out->piece_logp = p.piece_logp;
        out->piece_neg = p.piece_neg;
        out->f0_direct = p.f0_direct;
    });
}

eslab_status eslab_antiderivative_check(uint64_t a, double u, double* residual) {
    if (eslab_status s = require(residual != nullptr, "out pointer is null");
        s != ESLAB_OK)
        return s;
    return guarded([&] { *residual = eslab::antiderivative_check(a, u); });
}

eslab_status eslab_integral_identity_check(uint64_t a, double* quadrature,
                                           double* closed_form) {
    if (eslab_status s = require(quadrature && closed_form, "null argument");
        s != ESLAB_OK)
        return s;
    return guarded([&] {
        auto [quad, closed] = eslab::integral_identity_check(a);
        *quadrature = quad;
        *closed_form = closed;
    });
}

eslab_status eslab_convergence_row(uint64_t k, const eslab_primes* primes,
                                   double* log_ghat, double* normalized) {
    if (eslab_status s = require(primes && log_ghat && normalized, "null argument");
        s != ESLAB_OK)
        return s;
    return guarded([&] {
        auto rows = eslab::convergence_table({k}, primes->table);
        *log_ghat = rows[0].log_ghat;
        *normalized = rows[0].normalized;
    });
}

const char* eslab_known_g(uint64_t k) {
    switch (k) {
    case 376: return "7778804220120654420924631668091";
    case 377: return "5973303871796437264595936954237";
    default: return nullptr;
    }
}

} // extern "C"
