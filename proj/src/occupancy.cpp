#include "mixaudit/occupancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

#include "mixaudit/bounds.hpp"
#include "mixaudit/coefficients.hpp"

namespace mixaudit {

void for_each_partition(int n, int h, const std::function<void(const std::vector<int>&)>& fn) {
    if (h < 1 || h > n) throw std::invalid_argument("for_each_partition: need 1 <= h <= n");
    std::vector<int> parts(h);
    // nondecreasing parts, each remaining part at least the previous one
    auto rec = [&](auto&& self, int pos, int remaining, int min_part) -> void {
        if (pos == h - 1) {
            if (remaining >= min_part) {
                parts[pos] = remaining;
                fn(parts);
            }
            return;
        }
        const int slots_after = h - pos;
        for (int v = min_part; v * slots_after <= remaining; ++v) {
            parts[pos] = v;
            self(self, pos + 1, remaining - v, v);
        }
    };
    rec(rec, 0, n, 1);
}

std::vector<std::int64_t> partition_counts(int n) {
    // p(m) via the table over largest allowed part
    std::vector<std::int64_t> dp(n + 1, 0);
    dp[0] = 1;
    for (int part = 1; part <= n; ++part)
        for (int m = part; m <= n; ++m) dp[m] += dp[m - part];
    return dp;
}

namespace {

struct StreamingLse {
    double max_log = -std::numeric_limits<double>::infinity();
    double scaled_sum = 0.0;
    void add(double lg) {
        if (lg <= max_log) {
            scaled_sum += std::exp(lg - max_log);
        } else {
            scaled_sum = scaled_sum * std::exp(max_log - lg) + 1.0;
            max_log = lg;
        }
    }
    double log_total() const {
        if (scaled_sum <= 0.0) return -std::numeric_limits<double>::infinity();
        return max_log + std::log(scaled_sum);
    }
};

struct SCacheKey {
    int n;
    double alpha;
    bool operator<(const SCacheKey& o) const {
        return n != o.n ? n < o.n : alpha < o.alpha;
    }
};

std::map<SCacheKey, std::vector<double>> s_cache;
std::mutex s_cache_mutex;

// log S_h for h = 1..n:
//   S_h = sum over partitions of n into h parts of
//         multinomial(n; parts) * multinomial(h; multiplicities)
//         * prod_j Gamma(alpha + n_j) / Gamma(alpha)
std::vector<double> compute_log_partition_sums(int n, double alpha) {
    std::vector<double> lg_fact(n + 2);
    for (int i = 0; i <= n + 1; ++i) lg_fact[i] = std::lgamma(i + 1.0);
    std::vector<double> lg_alpha(n + 1);
    const double lga = std::lgamma(alpha);
    for (int i = 0; i <= n; ++i) lg_alpha[i] = std::lgamma(alpha + i) - lga;

    std::vector<double> out(n + 1, -std::numeric_limits<double>::infinity());
    for (int h = 1; h <= n; ++h) {
        StreamingLse acc;
        for_each_partition(n, h, [&](const std::vector<int>& parts) {
            double lg = lg_fact[n] + lg_fact[h];
            int run = 1;
            for (std::size_t j = 0; j < parts.size(); ++j) {
                lg += lg_alpha[parts[j]] - lg_fact[parts[j]];
                if (j + 1 < parts.size() && parts[j + 1] == parts[j]) {
                    ++run;
                } else {
                    lg -= lg_fact[run];
                    run = 1;
                }
            }
            acc.add(lg);
        });
        out[h] = acc.log_total();
    }
    return out;
}

void require_exact_feasible(const ModelConfig& config) {
    if (config.n > kMaxExactPartitionN)
        throw std::invalid_argument(
            "exact partition enumeration refused for n > 120; use the Monte Carlo mode "
            "(prior_h_given_k_monte_carlo) with an explicit seed and draw count");
}

// b_h-style series: sum_{k=h}^{support} pi(k) C(k,h) a_{kh}
double log_series_b(int h, const ModelConfig& config) {
    const int k_end = series_truncation(config);
    StreamingLse acc;
    for (int k = std::max(h, 1); k <= k_end; ++k) {
        const double pk = config.k_prior.weight(k);
        if (pk <= 0.0) continue;
        acc.add(std::log(pk) + log_binomial(k, h) + log_a(k, h, config).log_mag);
    }
    return acc.log_total();
}

}  // namespace

const std::vector<double>& log_partition_sums(int n, double alpha) {
    std::lock_guard<std::mutex> lock(s_cache_mutex);
    const SCacheKey key{n, alpha};
    auto it = s_cache.find(key);
    if (it == s_cache.end())
        it = s_cache.emplace(key, compute_log_partition_sums(n, alpha)).first;
    return it->second;
}

double prior_h_given_k(int h, int k, const ModelConfig& config) {
    const double alpha = config.symmetric_alpha();
    require_exact_feasible(config);
    const int n = config.n;
    if (h < 1 || h > std::min(k, n)) return 0.0;
    const std::vector<double>& logS = log_partition_sums(n, alpha);
    const double lg = std::lgamma(k * alpha) - std::lgamma(k * alpha + n) +
                      log_binomial(k, h) + logS[h];
    return std::exp(lg);
}

OccupancyDistribution prior_h(const ModelConfig& config) {
    const double alpha = config.symmetric_alpha();
    require_exact_feasible(config);
    if (!config.k_prior.proper()) throw std::invalid_argument("prior_h: improper prior on k");
    const int n = config.n;
    const int k_end = series_truncation(config);

    double norm = 0.0;
    for (int k = 1; k <= k_end; ++k) norm += config.k_prior.weight(k);

    OccupancyDistribution dist{OccupancyKind::Prior, std::vector<double>(n, 0.0), n, alpha};
    for (int h = 1; h <= n; ++h) {
        double v = 0.0;
        for (int k = h; k <= k_end; ++k) {
            const double pk = config.k_prior.weight(k);
            if (pk > 0.0) v += pk * prior_h_given_k(h, k, config);
        }
        dist.values[h - 1] = v / norm;
    }
    return dist;
}

OccupancyDistribution posterior_h(const std::vector<double>& fdagger, const ModelConfig& config) {
    const double alpha = config.symmetric_alpha();
    if (!config.k_prior.proper()) throw std::invalid_argument("posterior_h: improper prior on k");
    const int n = config.n;
    bool any_pos = false;
    for (double v : fdagger) {
        if (v < 0.0) throw std::invalid_argument("posterior_h: negative f_dagger entry");
        if (v > 0.0) any_pos = true;
    }
    if (!any_pos) throw std::invalid_argument("posterior_h: all-zero f_dagger");

    OccupancyDistribution dist{OccupancyKind::Posterior, std::vector<double>(n, 0.0), n, alpha};
    const int H = std::min<int>(n, static_cast<int>(fdagger.size()));
    double total = 0.0;
    for (int h = 1; h <= H; ++h) {
        if (fdagger[h - 1] <= 0.0) continue;
        const double v = fdagger[h - 1] * std::exp(log_series_b(h, config));
        dist.values[h - 1] = v;
        total += v;
    }
    for (double& v : dist.values) v /= total;
    return dist;
}

std::vector<double> marginal_likelihood_h(const std::vector<double>& fdagger,
                                          const ModelConfig& config) {
    const OccupancyDistribution post = posterior_h(fdagger, config);
    const OccupancyDistribution prior = prior_h(config);
    std::vector<double> out(config.n, 0.0);
    double total = 0.0;
    for (int h = 1; h <= config.n; ++h) {
        if (prior.values[h - 1] <= 0.0) continue;  // excluded, no prior mass at h
        out[h - 1] = post.values[h - 1] / prior.values[h - 1];
        total += out[h - 1];
    }
    if (total <= 0.0) throw std::invalid_argument("marginal_likelihood_h: no representable h");
    for (double& v : out) v /= total;
    return out;
}

OccupancyDistribution prior_h_given_k_monte_carlo(int k, const ModelConfig& config,
                                                  std::int64_t draws, std::uint64_t seed) {
    const double alpha = config.symmetric_alpha();
    if (k < 1) throw std::invalid_argument("prior_h_given_k_monte_carlo: k must be >= 1");
    if (draws < 1) throw std::invalid_argument("prior_h_given_k_monte_carlo: draws must be >= 1");
    const int n = config.n;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::int64_t> hist(n + 1, 0);
    std::vector<double> counts(k);
    for (std::int64_t d = 0; d < draws; ++d) {
        std::fill(counts.begin(), counts.end(), 0.0);
        int nonempty = 0;
        double total = k * alpha;
        for (int i = 0; i < n; ++i) {
            // Polya urn: P(g_i = j | past) = (alpha + n_j) / (k*alpha + i)
            double u = unif(rng) * total;
            int j = 0;
            for (; j < k - 1; ++j) {
                const double w = alpha + counts[j];
                if (u < w) break;
                u -= w;
            }
            if (counts[j] == 0.0) ++nonempty;
            counts[j] += 1.0;
            total += 1.0;
        }
        ++hist[std::min(nonempty, n)];
    }
    OccupancyDistribution dist{OccupancyKind::PriorGivenK, std::vector<double>(n, 0.0), n, alpha};
    for (int h = 1; h <= n; ++h)
        dist.values[h - 1] = static_cast<double>(hist[h]) / static_cast<double>(draws);
    return dist;
}

}  // namespace mixaudit
