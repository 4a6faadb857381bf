#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mixaudit/model_config.hpp"

namespace mixaudit {

enum class OccupancyKind { PriorGivenK, Prior, Posterior, MarginalLikelihoodH };

struct OccupancyDistribution {
    OccupancyKind kind;
    std::vector<double> values;  // indexed by h = 1..n
    int n = 0;
    double alpha = 0.0;
};

// Visit every partition of n into exactly h positive nondecreasing parts.
void for_each_partition(int n, int h, const std::function<void(const std::vector<int>&)>& fn);

// p(0..n) by the classic recurrence over largest parts.
std::vector<std::int64_t> partition_counts(int n);

// Cached per-(n, alpha) log partition sums S_h (the k-independent factor of
// the occupancy probability), h = 1..n.
const std::vector<double>& log_partition_sums(int n, double alpha);

double prior_h_given_k(int h, int k, const ModelConfig& config);
OccupancyDistribution prior_h(const ModelConfig& config);
OccupancyDistribution posterior_h(const std::vector<double>& fdagger, const ModelConfig& config);
// f(x|h), normalized to sum 1 over the h with f(h) > 0.
std::vector<double> marginal_likelihood_h(const std::vector<double>& fdagger,
                                          const ModelConfig& config);

// Monte Carlo fallback for large n: Polya-urn draws of allocation vectors
// under f(g|k), binned by the number of nonempty components.
OccupancyDistribution prior_h_given_k_monte_carlo(int k, const ModelConfig& config,
                                                  std::int64_t draws, std::uint64_t seed);

// Exact partition enumeration refuses beyond this sample size.
inline constexpr int kMaxExactPartitionN = 120;

}  // namespace mixaudit
