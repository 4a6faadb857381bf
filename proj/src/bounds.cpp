#include "mixaudit/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "mixaudit/coefficients.hpp"

namespace mixaudit {

int series_truncation(const ModelConfig& config) {
    const KPrior& p = config.k_prior;
    if (p.finite_support()) return p.support_end();
    if (!p.proper()) throw std::invalid_argument("series_truncation: improper prior on k");
    // Geometric tail: stop once pi(j)/alpha^n style term bounds contribute
    // relative mass below 1e-12.
    const int len = static_cast<int>(p.weights.size());
    double head = 0.0;
    for (int k = 1; k <= len; ++k) head += p.weight(k);
    int j = len;
    while (p.weight(j + 1) * 2.0 > 1e-12 * head && j < len + 2000) ++j;
    return j;
}

std::vector<double> spike_posterior(int t, const ModelConfig& config, int k_support) {
    if (t < 1 || t > config.n) throw std::invalid_argument("spike_posterior: need 1 <= t <= n");
    if (k_support < t) throw std::invalid_argument("spike_posterior: k_support < t");
    std::vector<double> w(k_support, 0.0);
    double total = 0.0;
    for (int k = t; k <= k_support; ++k) {
        const double pk = config.k_prior.weight(k);
        if (pk <= 0.0) continue;
        w[k - 1] = pk * std::exp(log_binomial(k, t) + log_a(k, t, config).log_mag);
        total += w[k - 1];
    }
    if (total <= 0.0) throw std::invalid_argument("spike_posterior: prior has no mass on k >= t");
    for (double& v : w) v /= total;
    return w;
}

BoundResult posterior_upper_bound(int k, const ModelConfig& config) {
    if (k < 1) throw std::invalid_argument("posterior_upper_bound: k must be >= 1");
    if (!config.k_prior.proper())
        throw std::invalid_argument("posterior_upper_bound: improper prior on k");
    (void)config.symmetric_alpha();
    const int k_support = std::max(k, series_truncation(config));

    BoundResult best;
    best.k = k;
    best.bound = -1.0;
    const int t_max = std::min(k, config.n);
    for (int t = 1; t <= t_max; ++t) {
        std::vector<double> post = spike_posterior(t, config, k_support);
        const double v = post[k - 1];
        if (v > best.bound) {  // ties broken toward smaller t
            best.bound = v;
            best.argmax_spike = t;
            best.spike_posterior = std::move(post);
        }
    }
    return best;
}

std::vector<std::vector<double>> bounds_table(const std::vector<int>& n_list,
                                              const std::vector<int>& k_list,
                                              const ModelConfig& config_base) {
    std::vector<std::vector<double>> table;
    table.reserve(n_list.size());
    for (int n : n_list) {
        ModelConfig cfg = config_base;
        cfg.n = n;
        cfg.validate();
        std::vector<double> row;
        row.reserve(k_list.size());
        for (int k : k_list) row.push_back(posterior_upper_bound(k, cfg).bound);
        table.push_back(std::move(row));
    }
    return table;
}

}  // namespace mixaudit
