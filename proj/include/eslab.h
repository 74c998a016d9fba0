/* eslab — exact and asymptotic toolkit for the Erdos–Selfridge function.
 *
 * C interface of the shared library. All entry points return an
 * eslab_status; results travel through out-parameters. Big integers and
 * exact rationals cross the boundary as decimal strings owned by the
 * library (free them with eslab_string_free). Handles are opaque and
 * freed with their matching *_free call. The last failing call's message
 * is kept per thread and readable via eslab_last_error().
 */
#ifndef ESLAB_H
#define ESLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum eslab_status {
    ESLAB_OK = 0,
    ESLAB_INVALID_ARGUMENT = 1, /* precondition or domain violation */
    ESLAB_NOT_FOUND = 2,        /* scan exhausted its bound */
    ESLAB_TOLERANCE = 3,        /* tolerance unreachable within caps */
    ESLAB_RESOURCE = 4,         /* configured memory budget exceeded */
    ESLAB_BUFFER_TOO_SMALL = 5, /* caller buffer cannot hold the result */
    ESLAB_NO_MEMORY = 6,
    ESLAB_INTERNAL = 7
} eslab_status;

const char* eslab_version(void);

/* Message from the most recent failing call on this thread ("" if none). */
const char* eslab_last_error(void);

void eslab_string_free(char* s);
void eslab_u64_free(uint64_t* p);

/* ---- primes ---- */

typedef struct eslab_primes eslab_primes;

eslab_status eslab_primes_create(uint64_t limit, eslab_primes** out);
void eslab_primes_free(eslab_primes* primes);
uint64_t eslab_primes_limit(const eslab_primes* primes);
uint64_t eslab_primes_count(const eslab_primes* primes);
eslab_status eslab_primes_get(const eslab_primes* primes, uint64_t index,
                              uint64_t* out);

/* ---- base-p digits and domination ---- */

/* Least-significant digit first; *len receives the digit count. */
eslab_status eslab_digits(uint64_t k, uint64_t base, uint64_t* buffer,
                          size_t capacity, size_t* len);

/* *out = 1 iff every base-p digit of k is <= the matching digit of n
 * (equivalently, p does not divide binomial(n, k)). */
eslab_status eslab_dominates(uint64_t n, uint64_t k, uint64_t p, int* out);

/* *out = 1 iff binomial(n, k) has no prime factor <= limit. */
eslab_status eslab_binomial_prime_free(uint64_t n, uint64_t k, uint64_t limit,
                                       const eslab_primes* primes, int* out);

/* ---- the estimate ghat(k) ---- */

/* Product over p <= k of p^(base-p digit count of k), as decimal. */
eslab_status eslab_prime_power_modulus(uint64_t k, const eslab_primes* primes,
                                       char** decimal);

/* Count of residues modulo that product whose digits dominate k's. */
eslab_status eslab_dominating_residue_count(uint64_t k, const eslab_primes* primes,
                                            char** decimal);

/* ghat(k) = modulus / residue count, reduced. */
eslab_status eslab_ghat(uint64_t k, const eslab_primes* primes, char** numerator,
                        char** denominator);

/* Natural log of ghat(k), compensated summation, deterministic order. */
eslab_status eslab_ghat_log(uint64_t k, const eslab_primes* primes, double* out);

/* Exact comparison of ghat(k1) and ghat(k2): *out is -1, 0 or 1. */
eslab_status eslab_ghat_compare(uint64_t k1, uint64_t k2, const eslab_primes* primes,
                                int* out);

typedef struct eslab_breakdown {
    double log_ghat;
    double log_f_small; /* primes p <= isqrt(k), all digit positions */
    double log_f1;      /* second digit, isqrt(k) < p <= k */
    double log_f0;      /* least digit, isqrt(k) < p <= k */
    int exact_available; /* 1 when k is within the exact-arithmetic cutoff */
} eslab_breakdown;

eslab_status eslab_decompose(uint64_t k, const eslab_primes* primes,
                             eslab_breakdown* out);

/* ---- exact certificate at k with k+1 prime ---- */

typedef struct eslab_ratio_certificate eslab_ratio_certificate;

eslab_status eslab_ratio_certificate_create(uint64_t k, const eslab_primes* primes,
                                            eslab_ratio_certificate** out);
void eslab_ratio_certificate_free(eslab_ratio_certificate* cert);
int eslab_ratio_cert_m_identity_ok(const eslab_ratio_certificate* cert);
int eslab_ratio_cert_r_identity_ok(const eslab_ratio_certificate* cert);
int eslab_ratio_cert_digit_increment_ok(const eslab_ratio_certificate* cert);
int eslab_ratio_cert_bound_ok(const eslab_ratio_certificate* cert);
/* ghat(k+1)/ghat(k) as an exact reduced fraction. */
eslab_status eslab_ratio_cert_ratio(const eslab_ratio_certificate* cert,
                                    char** numerator, char** denominator);
/* ((k+1)/k) * prod_{p<=k} p/(p-1) as an exact reduced fraction. */
eslab_status eslab_ratio_cert_bound(const eslab_ratio_certificate* cert,
                                    char** numerator, char** denominator);

/* ---- the search for g(k) ---- */

typedef struct eslab_search_config {
    uint64_t k;
    uint64_t scan_bound;   /* 0: default 10 * ceil(ghat(k)) */
    int use_wheel;         /* 0: naive definition scan, 1: residue wheel */
    uint64_t wheel_budget; /* 0: default 2^62 */
    uint32_t workers;      /* 0: 1 */
} eslab_search_config;

typedef struct eslab_search_result eslab_search_result;

eslab_status eslab_search(const eslab_search_config* config,
                          const eslab_primes* primes, eslab_search_result** out);
void eslab_search_result_free(eslab_search_result* result);
uint64_t eslab_search_result_g(const eslab_search_result* result);
uint64_t eslab_search_result_candidates_tested(const eslab_search_result* result);
double eslab_search_result_elapsed_seconds(const eslab_search_result* result);
/* Certificate: one entry per prime p <= k with the digits of k and of g. */
size_t eslab_search_result_cert_count(const eslab_search_result* result);
eslab_status eslab_search_result_cert_prime(const eslab_search_result* result,
                                            size_t index, uint64_t* prime);
/* which = 0 for k's digits, 1 for g's digits. */
eslab_status eslab_search_result_cert_digits(const eslab_search_result* result,
                                             size_t index, int which,
                                             uint64_t* buffer, size_t capacity,
                                             size_t* len);

/* Allowed residues modulo p^(digit count of k), ascending; caller frees
 * *out with eslab_u64_free. */
eslab_status eslab_allowed_residues(uint64_t k, uint64_t p, uint64_t** out,
                                    size_t* count);

/* ---- asymptotics ---- */

typedef struct eslab_constant {
    double value;
    double lower;
    double upper;
    int64_t terms_used;
    char value_text[48]; /* 30 significant digits */
} eslab_constant;

/* Rigorous bracket of sum_{a>=1} log(1+1/a)/(a+1); width <= tolerance. */
eslab_status eslab_growth_constant(double tolerance, eslab_constant* out);

/* sum_{p<=x} floor(log_p x) log p  (the Chebyshev psi function). */
eslab_status eslab_chebyshev_weighted_sum(uint64_t x, const eslab_primes* primes,
                                          double* out);

/* prod_{p<=x} p/(p-1). */
eslab_status eslab_mertens_product(uint64_t x, const eslab_primes* primes,
                                   double* out);

typedef struct eslab_f0_pieces {
    double piece_tail;
    double piece_logp;
    double piece_neg;
    double f0_direct;
} eslab_f0_pieces;

eslab_status eslab_f0_pieces_compute(uint64_t k, const eslab_primes* primes,
                                     eslab_f0_pieces* out);

eslab_status eslab_antiderivative_check(uint64_t a, double u, double* residual);

eslab_status eslab_integral_identity_check(uint64_t a, double* quadrature,
                                           double* closed_form);

eslab_status eslab_convergence_row(uint64_t k, const eslab_primes* primes,
                                   double* log_ghat, double* normalized);

/* Previously computed record values of g, for comparison pipelines.
 * Returns a static decimal string, or NULL if k is not on file. */
const char* eslab_known_g(uint64_t k);

#ifdef __cplusplus
}
#endif

#endif /* ESLAB_H */
