#include "mixaudit/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mixaudit {

double log_binomial(int k, int t) {
    if (t < 0 || t > k) return -std::numeric_limits<double>::infinity();
    if (t == 0 || t == k) return 0.0;
    return std::lgamma(k + 1.0) - std::lgamma(t + 1.0) - std::lgamma(k - t + 1.0);
}

SignedLog log_a(int k, int t, const ModelConfig& config) {
    if (t < 1 || t > k) throw std::invalid_argument("log_a: need 1 <= t <= k");
    config.validate();
    if (k == t) return SignedLog::one();  // identical ratios cancel
    const double a0k = config.alpha0(k);
    const double a0t = config.alpha0(t);
    const double n = config.n;
    const double lm = std::lgamma(a0k) - std::lgamma(a0k + n) + std::lgamma(a0t + n) - std::lgamma(a0t);
    return SignedLog(1, lm);
}

int CoeffTables::idx(int k, int t) const {
    if (k < 1 || k > K_ || t < 1 || t > k)
        throw std::out_of_range("CoeffTables: index (k,t) out of triangle");
    return k * (k - 1) / 2 + (t - 1);
}

CoeffTables::CoeffTables(int K, const ModelConfig& config) : K_(K), n_(config.n) {
    if (K < 1) throw std::invalid_argument("CoeffTables: K must be >= 1");
    log_a_.resize(K * (K + 1) / 2);
    log_b_.resize(K * (K + 1) / 2);
    for (int k = 1; k <= K; ++k) {
        for (int t = 1; t <= k; ++t) {
            const double la = log_a(k, t, config).log_mag;
            log_a_[idx(k, t)] = (k == t) ? 0.0 : la;
            log_b_[idx(k, t)] = (k == t) ? 0.0 : la + log_binomial(k, t);
        }
    }
}

CoeffTables build_tables(int K, const ModelConfig& config) {
    return CoeffTables(K, config);
}

std::vector<SignedLog> inverse_row(int k, const CoeffTables& tables) {
    if (k < 1 || k > tables.K())
        throw std::out_of_range("inverse_row: k out of range");
    std::vector<SignedLog> row;
    row.reserve(k);
    for (int t = 1; t <= k; ++t) {
        const int sign = ((k + t) % 2 == 0) ? 1 : -1;
        row.emplace_back(sign, tables.lb(k, t));
    }
    return row;
}

int default_properness_jmax(const ModelConfig& config) {
    return std::max(10 * config.n, 1000);
}

PropernessReport properness_diagnostic(const ModelConfig& config, int j_max) {
    const double alpha = config.symmetric_alpha();
    const int n = config.n;
    if (j_max < n) throw std::invalid_argument("properness_diagnostic: j_max must be >= n");

    PropernessReport rep;
    rep.j_begin = n;
    const double lower_denom = std::pow(n * alpha + n - 1.0, n);
    const double upper_denom = std::pow(alpha, n);
    double running = 0.0;
    for (int j = n; j <= j_max; ++j) {
        const double pi_j = config.k_prior.weight(j);
        // c_j = pi(j) * prod_{i=0}^{n-1} (j - i) / (j*alpha + n - 1 - i)
        double log_prod = 0.0;
        for (int i = 0; i < n; ++i)
            log_prod += std::log(j - i) - std::log(j * alpha + n - 1.0 - i);
        const double c_j = pi_j * std::exp(log_prod);
        rep.terms.push_back(c_j);
        rep.lower.push_back(pi_j / lower_denom);
        rep.upper.push_back(pi_j / upper_denom);
        running += c_j;
        rep.partial_sums.push_back(running);
    }

    const KPrior& p = config.k_prior;
    if (p.finite_support()) {
        rep.verdict = PropernessReport::Verdict::Convergent;
        rep.note = "finite prior support; the series is a finite sum";
    } else if (p.tail == KPrior::Tail::Geometric) {
        rep.verdict = PropernessReport::Verdict::Convergent;
        rep.note = "summable tail bound; converges by comparison with the upper bracket";
    } else if (p.tail == KPrior::Tail::Constant) {
        // Constant positive tail: the lower bracket gives a divergent minorant.
        bool growing = rep.partial_sums.size() >= 2 &&
                       rep.partial_sums.back() > rep.partial_sums[rep.partial_sums.size() / 2];
        rep.verdict = growing ? PropernessReport::Verdict::Divergent
                              : PropernessReport::Verdict::Inconclusive;
        rep.note = "constant positive tail; partial sums unbounded (improper posterior)";
    } else {
        rep.verdict = PropernessReport::Verdict::Inconclusive;
    }
    return rep;
}

}  // namespace mixaudit
