#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <span>

namespace mixaudit {

// Scalar stored as sign and natural log of magnitude, so that products of
// Gamma-function ratios and long alternating sums stay representable.
struct SignedLog {
    int sign = 0;                // -1, 0, +1; 0 means exact zero
    double log_mag = -std::numeric_limits<double>::infinity();

    SignedLog() = default;
    SignedLog(int s, double lm) : sign(s), log_mag(lm) {}

    static SignedLog zero() { return SignedLog(); }
    static SignedLog one() { return SignedLog(1, 0.0); }

    static SignedLog from_double(double x) {
        if (x == 0.0) return zero();
        return SignedLog(x > 0 ? 1 : -1, std::log(std::abs(x)));
    }
    // exp(lm), positive by construction
    static SignedLog from_log(double lm) { return SignedLog(1, lm); }

    double to_double() const {
        if (sign == 0) return 0.0;
        return sign * std::exp(log_mag);
    }
    bool is_zero() const { return sign == 0; }
};

SignedLog sl_mul(SignedLog a, SignedLog b);
SignedLog sl_add(SignedLog a, SignedLog b);
SignedLog sl_neg(SignedLog a);

// Sum with positive and negative terms accumulated separately and combined
// last.  condition = (sum of magnitudes) / |result|; large values flag
// cancellation-dominated results.  Infinity when the result is exactly zero
// but the terms were not all zero.
struct SumResult {
    SignedLog value;
    double condition = 1.0;
};
SumResult sl_sum(std::span<const SignedLog> terms);

}  // namespace mixaudit
