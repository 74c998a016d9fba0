#include "eslab/bigint.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eslab {

namespace {

BigInt tree_reduce(std::vector<BigInt>& level) {
    if (level.empty()) return BigInt(1);
    while (level.size() > 1) {
        size_t out = 0;
        for (size_t i = 0; i + 1 < level.size(); i += 2)
            level[out++] = level[i] * level[i + 1];
        if (level.size() % 2 == 1) level[out++] = level.back();
        level.resize(out);
    }
    return level.front();
}

} // namespace

BigInt product_tree(std::span<const uint64_t> factors) {
    std::vector<BigInt> level;
    level.reserve(factors.size());
    for (uint64_t f : factors) {
        BigInt z;
        mpz_import(z.get_mpz_t(), 1, 1, sizeof(f), 0, 0, &f);
        level.push_back(std::move(z));
    }
    return tree_reduce(level);
}

BigInt product_tree(std::vector<BigInt> factors) { return tree_reduce(factors); }

double log_bigint(const BigInt& z) {
    if (z <= 0) throw std::invalid_argument("log_bigint: argument must be positive");
    signed long exp = 0;
    double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * std::numbers::ln2;
}

double log_rational(const Rational& q) {
    return log_bigint(q.get_num()) - log_bigint(q.get_den());
}

Rational make_rational(const BigInt& num, const BigInt& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_decimal(const BigInt& z) { return z.get_str(10); }

} // namespace eslab
