#ifndef ESLAB_BIGINT_HPP
#define ESLAB_BIGINT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace eslab {

using BigInt = mpz_class;
using Rational = mpq_class; // always kept canonical: gcd(num, den) = 1, den >= 1

// Product of a factor list as a balanced tree (quasi-linear bit cost).
BigInt product_tree(std::span<const uint64_t> factors);
BigInt product_tree(std::vector<BigInt> factors);

// Natural log of a positive big integer, accurate to ~1 ulp of double.
double log_bigint(const BigInt& z);

double log_rational(const Rational& q);

Rational make_rational(const BigInt& num, const BigInt& den);

std::string to_decimal(const BigInt& z);

} // namespace eslab

#endif
