#pragma once

#include <vector>

#include "mixaudit/model_config.hpp"

namespace mixaudit {

// Posterior of k under the spike f_dagger vector with only f_t^dagger > 0:
// pi(k|x) proportional to pi(k) C(k,t) a_{kt}, k >= t.  Indexed k = 1..size.
std::vector<double> spike_posterior(int t, const ModelConfig& config, int k_support);

struct BoundResult {
    int k = 0;
    double bound = 0.0;
    int argmax_spike = 0;               // t achieving the maximum (smallest on ties)
    std::vector<double> spike_posterior;  // full distribution for that spike
};

// Universal upper bound on pi(k|x): maximum of the spike posteriors over
// t = 1..k^n.
BoundResult posterior_upper_bound(int k, const ModelConfig& config);

// One row per n, one column per k.  config_base supplies alpha and k_prior.
std::vector<std::vector<double>> bounds_table(const std::vector<int>& n_list,
                                              const std::vector<int>& k_list,
                                              const ModelConfig& config_base);

// Truncation point for series over k under the prior (support end for finite
// priors, relative-tail cutoff 1e-12 otherwise).
int series_truncation(const ModelConfig& config);

}  // namespace mixaudit
