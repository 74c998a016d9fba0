#include "eslab/asymptotics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <mpfr.h>

#include "eslab/errors.hpp"
#include "eslab/estimator.hpp"
#include "eslab/kahan.hpp"

namespace eslab {

namespace {

constexpr mpfr_prec_t kPrecision = 192;
constexpr int64_t kSeriesCap = 10'000'000;

// Minimal RAII for a working set of mpfr registers.
struct Reg {
    mpfr_t x;
    Reg() { mpfr_init2(x, kPrecision); }
    ~Reg() { mpfr_clear(x); }
    Reg(const Reg&) = delete;
    Reg& operator=(const Reg&) = delete;
    operator mpfr_ptr() { return x; }
};

// term(a) = log(1+1/a)/(a+1), rounded in the requested direction.
void series_term(mpfr_ptr out, unsigned long a, mpfr_rnd_t rnd) {
    mpfr_set_ui(out, 1, rnd);
    mpfr_div_ui(out, out, a, rnd);
    mpfr_log1p(out, out, rnd);
    mpfr_div_ui(out, out, a + 1, rnd);
}

void directed_partial_sum(mpfr_ptr acc, int64_t terms, mpfr_rnd_t rnd) {
    Reg term;
    mpfr_set_zero(acc, 1);
    for (int64_t a = 1; a <= terms; ++a) {
        series_term(term, static_cast<unsigned long>(a), rnd);
        mpfr_add(acc, acc, term, rnd);
    }
}

// Tail bounds for sum_{a > A}. The crude bracket comes from
// 1/(a+1) <= log(1+1/a) <= 1/a and integral/telescoping sums:
//   sum 1/(a(a+1)) = 1/(A+1),   sum 1/(a+1)^2 >= 1/(A+2).
void tail_direct(mpfr_ptr lo, mpfr_ptr hi, int64_t A) {
    mpfr_set_ui(lo, 1, MPFR_RNDD);
    mpfr_div_ui(lo, lo, static_cast<unsigned long>(A + 2), MPFR_RNDD);
    mpfr_set_ui(hi, 1, MPFR_RNDU);
    mpfr_div_ui(hi, hi, static_cast<unsigned long>(A + 1), MPFR_RNDU);
}

// Refined tail: expanding log(1+1/a) to second order,
//   T = 1/(A+1) - S2/2 + R,
// with S2 = sum_{a>A} 1/(a^2(a+1)) = psi'(A+1) - 1/(A+1) and
// R in [0, 1/(9A^3)]. psi'(x) is bracketed by its asymptotic partial sums
//   s3 - 1/(30x^5) < psi'(x) < s3,  s3 = 1/x + 1/(2x^2) + 1/(6x^3),
// so the bracket width is ~1/(9A^3) instead of ~1/A^2.
void tail_refined(mpfr_ptr lo, mpfr_ptr hi, int64_t A) {
    unsigned long x = static_cast<unsigned long>(A + 1);
    Reg inv, s3lo, s3hi, tmp;

    auto s3 = [&](mpfr_ptr out, mpfr_rnd_t rnd) {
        mpfr_set_ui(out, 1, rnd);
        mpfr_div_ui(out, out, x, rnd); // 1/x
        mpfr_ui_pow_ui(tmp, x, 2, rnd == MPFR_RNDU ? MPFR_RNDD : MPFR_RNDU);
        mpfr_ui_div(tmp, 1, tmp, rnd);
        mpfr_div_ui(tmp, tmp, 2, rnd);
        mpfr_add(out, out, tmp, rnd); // + 1/(2x^2)
        mpfr_ui_pow_ui(tmp, x, 3, rnd == MPFR_RNDU ? MPFR_RNDD : MPFR_RNDU);
        mpfr_ui_div(tmp, 1, tmp, rnd);
        mpfr_div_ui(tmp, tmp, 6, rnd);
        mpfr_add(out, out, tmp, rnd); // + 1/(6x^3)
    };
    s3(s3hi, MPFR_RNDU);
    s3(s3lo, MPFR_RNDD);
    mpfr_ui_pow_ui(tmp, x, 5, MPFR_RNDD);
    mpfr_mul_ui(tmp, tmp, 30, MPFR_RNDD);
    mpfr_ui_div(tmp, 1, tmp, MPFR_RNDU);
    mpfr_sub(s3lo, s3lo, tmp, MPFR_RNDD); // s3 - 1/(30x^5)

    mpfr_set_ui(inv, 1, MPFR_RNDD);
    mpfr_div_ui(inv, inv, x, MPFR_RNDD); // 1/(A+1), lower

    // T_lo = 1/(A+1) - (s3hi - 1/(A+1))/2
    mpfr_sub(tmp, s3hi, inv, MPFR_RNDU);
    mpfr_div_ui(tmp, tmp, 2, MPFR_RNDU);
    mpfr_sub(lo, inv, tmp, MPFR_RNDD);

    // T_hi = 1/(A+1) - (s3lo - 1/(A+1))/2 + 1/(9A^3)
    mpfr_set_ui(hi, 1, MPFR_RNDU);
    mpfr_div_ui(hi, hi, x, MPFR_RNDU);
    mpfr_sub(tmp, s3lo, hi, MPFR_RNDD);
    mpfr_div_ui(tmp, tmp, 2, MPFR_RNDD);
    mpfr_sub(hi, hi, tmp, MPFR_RNDU);
    mpfr_ui_pow_ui(tmp, static_cast<unsigned long>(A), 3, MPFR_RNDD);
    mpfr_mul_ui(tmp, tmp, 9, MPFR_RNDD);
    mpfr_ui_div(tmp, 1, tmp, MPFR_RNDU);
    mpfr_add(hi, hi, tmp, MPFR_RNDU);
}

double simpson_rule(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double eps, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson_rule(fa, flm, fm, a, m);
    double right = simpson_rule(fm, frm, fb, m, b);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double eps) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = simpson_rule(fa, fm, fb, a, b);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, eps, 60);
}

} // namespace

double series_partial_sum(uint64_t terms) {
    KahanSum sum;
    for (uint64_t a = 1; a <= terms; ++a)
        sum.add(std::log1p(1.0 / static_cast<double>(a)) /
                static_cast<double>(a + 1));
    return sum.value();
}

ConstantResult growth_constant(double tolerance) {
    if (!(tolerance >= 1e-12))
        throw std::invalid_argument("growth_constant: tolerance must be >= 1e-12");

    // Term count so the tail bracket width stays below tolerance/2; the
    // refined tail keeps the count modest for tight tolerances.
    bool refined = tolerance < 1e-10;
    int64_t terms;
    if (refined) {
        terms = static_cast<int64_t>(std::cbrt(4.0 / (9.0 * tolerance))) + 50;
    } else {
        terms = static_cast<int64_t>(std::sqrt(2.0 / tolerance)) + 10;
        if (terms > kSeriesCap) refined = true; // fall back to the tighter tail
        if (refined) terms = static_cast<int64_t>(std::cbrt(4.0 / (9.0 * tolerance))) + 50;
    }
    if (terms > kSeriesCap)
        throw ToleranceError("growth_constant: tolerance needs more than " +
                             std::to_string(kSeriesCap) + " terms");

    Reg lo, hi, tail_lo, tail_hi, mid;
    directed_partial_sum(lo, terms, MPFR_RNDD);
    directed_partial_sum(hi, terms, MPFR_RNDU);
    if (refined)
        tail_refined(tail_lo, tail_hi, terms);
    else
        tail_direct(tail_lo, tail_hi, terms);
    mpfr_add(lo, lo, tail_lo, MPFR_RNDD);
    mpfr_add(hi, hi, tail_hi, MPFR_RNDU);

    ConstantResult out;
    out.terms_used = terms;
    out.lower = mpfr_get_d(lo, MPFR_RNDD);
    out.upper = mpfr_get_d(hi, MPFR_RNDU);
    mpfr_add(mid, lo, hi, MPFR_RNDN);
    mpfr_div_ui(mid, mid, 2, MPFR_RNDN);
    out.value = mpfr_get_d(mid, MPFR_RNDN);
    char buf[64];
    mpfr_snprintf(buf, sizeof buf, "%.30Rg", static_cast<mpfr_ptr>(mid));
    out.value_text = buf;

    Reg width;
    mpfr_sub(width, hi, lo, MPFR_RNDU);
    if (mpfr_cmp_d(width, tolerance) > 0)
        throw ToleranceError("growth_constant: bracket wider than tolerance");
    return out;
}

double chebyshev_weighted_sum(uint64_t x, const PrimeTable& primes) {
    if (x < 2) throw std::invalid_argument("chebyshev_weighted_sum: require x >= 2");
    primes.require_limit(x, "chebyshev_weighted_sum");
    KahanSum sum;
    for (uint64_t p : primes.primes) {
        if (p > x) break;
        uint64_t exponent = 0, power = 1;
        while (power <= x / p) {
            power *= p;
            ++exponent;
        }
        sum.add(static_cast<double>(exponent) * std::log(static_cast<double>(p)));
    }
    return sum.value();
}

double mertens_product(uint64_t x, const PrimeTable& primes) {
    if (x < 2) throw std::invalid_argument("mertens_product: require x >= 2");
    primes.require_limit(x, "mertens_product");
    KahanSum sum;
    for (uint64_t p : primes.primes) {
        if (p > x) break;
        sum.add(std::log(static_cast<double>(p)) -
                std::log(static_cast<double>(p - 1)));
    }
    return std::exp(sum.value());
}

F0Pieces f0_pieces(uint64_t k, const PrimeTable& primes) {
    if (k < 100) throw std::invalid_argument("f0_pieces: require k >= 100");
    primes.require_limit(k, "f0_pieces");

    double cutoff = std::pow(std::log(static_cast<double>(k)), 2.0);
    uint64_t root = isqrt64(k);
    KahanSum tail, logp, neg;
    for (uint64_t p : primes.primes) {
        if (p > k) break;
        if (p <= root) continue;
        uint64_t a = k / p;
        uint64_t remainder = (a + 1) * p - k; // = p - (k mod p)
        double lp = std::log(static_cast<double>(p));
        double lr = std::log(static_cast<double>(remainder));
        if (static_cast<double>(a) >= cutoff) {
            tail.add(lp - lr);
        } else {
            logp.add(lp);
            neg.add(lr);
        }
    }

    F0Pieces out;
    out.k = k;
    out.piece_tail = tail.value();
    out.piece_logp = logp.value();
    out.piece_neg = -neg.value();
    out.f0_direct = decompose(k, primes).log_f0;
    return out;
}

double antiderivative_check(uint64_t a, double u) {
    if (a < 1) throw std::invalid_argument("antiderivative_check: require a >= 1");
    double top = 1.0 + 1.0 / static_cast<double>(a);
    constexpr double h = 1e-6;
    if (!(u > 1.0 + 2 * h && u <= top))
        throw std::invalid_argument(
            "antiderivative_check: require 1 + 2e-6 < u <= 1 + 1/a");

    auto F = [&](double v) {
        return (v - 1.0) * std::log((a + 1) * (v - 1.0) / v) - std::log(v);
    };
    double derivative = (F(u + h) - F(u - h)) / (2.0 * h);
    double integrand = std::log((a + 1) * (u - 1.0) / u);
    return std::fabs(derivative - integrand);
}

std::pair<double, double> integral_identity_check(uint64_t a) {
    if (a < 1) throw std::invalid_argument("integral_identity_check: require a >= 1");
    double length = 1.0 / static_cast<double>(a);
    double ap1 = static_cast<double>(a) + 1.0;

    // After v = u-1 the integrand is log(a+1) + log v - log(1+v) on (0, 1/a].
    // The log v singularity is integrated analytically on [0, delta].
    double delta = length * 1e-4;
    double singular = delta * (std::log(delta) - 1.0);
    double smooth_head = integrate(
        [&](double v) { return std::log(ap1) - std::log1p(v); }, 0.0, delta, 1e-12);
    double body = integrate(
        [&](double v) { return std::log(ap1) + std::log(v) - std::log1p(v); }, delta,
        length, 1e-10);

    double quadrature = singular + smooth_head + body;
    double closed_form = -std::log1p(1.0 / static_cast<double>(a));
    return {quadrature, closed_form};
}

std::vector<ConvergenceRow> convergence_table(const std::vector<uint64_t>& k_values,
                                              const PrimeTable& primes) {
    std::vector<ConvergenceRow> rows;
    rows.reserve(k_values.size());
    for (uint64_t k : k_values) {
        if (k < 3) throw std::invalid_argument("convergence_table: require k >= 3");
        primes.require_limit(k, "convergence_table");
        ConvergenceRow row;
        row.k = k;
        row.log_ghat = ghat_log(k, primes);
        row.normalized =
            row.log_ghat * std::log(static_cast<double>(k)) / static_cast<double>(k);
        rows.push_back(row);
    }
    return rows;
}

} // namespace eslab
