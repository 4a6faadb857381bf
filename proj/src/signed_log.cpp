#include "mixaudit/signed_log.hpp"

#include <algorithm>
#include <vector>

namespace mixaudit {

SignedLog sl_mul(SignedLog a, SignedLog b) {
    if (a.sign == 0 || b.sign == 0) return SignedLog::zero();
    return SignedLog(a.sign * b.sign, a.log_mag + b.log_mag);
}

SignedLog sl_neg(SignedLog a) {
    a.sign = -a.sign;
    return a;
}

SignedLog sl_add(SignedLog a, SignedLog b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    if (a.log_mag < b.log_mag) std::swap(a, b);
    const double d = b.log_mag - a.log_mag;  // <= 0
    if (a.sign == b.sign)
        return SignedLog(a.sign, a.log_mag + std::log1p(std::exp(d)));
    if (d == 0.0) return SignedLog::zero();  // exact cancellation
    return SignedLog(a.sign, a.log_mag + std::log1p(-std::exp(d)));
}

namespace {

// log-sum-exp of nonnegative-magnitude logs with a running-max pivot
double logsumexp(const std::vector<double>& logs) {
    if (logs.empty()) return -std::numeric_limits<double>::infinity();
    double m = *std::max_element(logs.begin(), logs.end());
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double v : logs) s += std::exp(v - m);
    return m + std::log(s);
}

}  // namespace

SumResult sl_sum(std::span<const SignedLog> terms) {
    std::vector<double> pos, neg;
    for (const SignedLog& t : terms) {
        if (t.sign > 0) pos.push_back(t.log_mag);
        else if (t.sign < 0) neg.push_back(t.log_mag);
    }
    SignedLog p = pos.empty() ? SignedLog::zero() : SignedLog(1, logsumexp(pos));
    SignedLog n = neg.empty() ? SignedLog::zero() : SignedLog(-1, logsumexp(neg));

    SumResult out;
    out.value = sl_add(p, n);

    if (p.is_zero() && n.is_zero()) {
        out.condition = 1.0;
    } else if (out.value.is_zero()) {
        out.condition = std::numeric_limits<double>::infinity();
    } else {
        std::vector<double> mags;
        if (!p.is_zero()) mags.push_back(p.log_mag);
        if (!n.is_zero()) mags.push_back(n.log_mag);
        out.condition = std::exp(logsumexp(mags) - out.value.log_mag);
    }
    return out;
}

}  // namespace mixaudit
