#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mixaudit/coefficients.hpp"
#include "mixaudit/model_config.hpp"

namespace mixaudit {

enum class ScaleKind { PosteriorProbs, RawMarginals, LogMarginals };

// Marginal-likelihood values f_1..f_K, known up to a common positive
// constant.  The object being audited or corrected.
struct MarginalEstimates {
    std::vector<double> values;
    ScaleKind scale_kind = ScaleKind::PosteriorProbs;
    std::optional<double> residual_tail_mass;  // mass for k > K, excluded from transforms

    void validate() const;
    int K() const { return static_cast<int>(values.size()); }
    bool has_zeros() const;
    // Values on the linear scale (exponentiated and rescaled for log input).
    std::vector<double> linear_values() const;
};

struct Violation {
    enum class Kind { Pairwise, Full };
    int k;
    double value;
    Kind kind;
};

struct ConstraintReport {
    std::vector<double> fdagger;           // empty when the full check is unavailable
    std::vector<double> pairwise_margins;  // index k-1: f_k - a_{k,k-1} f_{k-1}; margin for k=1 is f_1
    std::vector<Violation> violations;
    std::vector<double> condition_estimates;
    bool full_check_done = false;
    bool advisory_only = false;  // zeros present in the input
    std::string notice;

    std::vector<int> violating_k() const;
};

// f_k^dagger = f_k + sum_{t<k} (-1)^{k+t} C(k,t) a_{kt} f_t, k = 1..K <= n.
std::vector<double> f_to_fdagger(const MarginalEstimates& est, const ModelConfig& config,
                                 std::vector<double>* condition_out = nullptr);

// f_k = sum_{h=1}^{k ^ n} C(k,h) a_{kh} f_h^dagger, k = 1..K (valid past n).
std::vector<double> fdagger_to_f(const std::vector<double>& fdagger, const ModelConfig& config,
                                 int K);

// f_k^* = f_k - a_{k,k-1} f_{k-1}; valid for any class structure.
std::vector<double> fstar_decompose(const MarginalEstimates& est, const ModelConfig& config);

// f_k for k > n directly from f_1..f_n.
double extend_f(const MarginalEstimates& est, const ModelConfig& config, int k);

ConstraintReport check_constraints(const MarginalEstimates& est, const ModelConfig& config);

}  // namespace mixaudit
