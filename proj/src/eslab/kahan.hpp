#ifndef ESLAB_KAHAN_HPP
#define ESLAB_KAHAN_HPP

namespace eslab {

// Kahan compensated accumulator. Summation order is part of every caller's
// contract: identical input order gives identical output bits.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }

    double value() const { return sum; }
};

} // namespace eslab

#endif
