#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mixaudit/model_config.hpp"
#include "mixaudit/transforms.hpp"

namespace mixaudit {

// Sampling-error covariance of the estimated f vector.
struct CovarianceSpec {
    enum class Kind { Full, Diagonal, Multinomial };
    Kind kind = Kind::Multinomial;
    Eigen::MatrixXd full;            // Kind::Full
    std::vector<double> variances;   // Kind::Diagonal
    std::int64_t mcmc_draws = 0;     // Kind::Multinomial: diag p(1-p)/N

    static CovarianceSpec multinomial(std::int64_t draws);
    static CovarianceSpec diagonal(std::vector<double> vars);
    static CovarianceSpec full_matrix(Eigen::MatrixXd m);

    // K x K covariance for the given estimate vector (posterior probabilities
    // for the multinomial kind).
    Eigen::MatrixXd materialize(const std::vector<double>& fhat) const;
};

enum class CorrectionMethod { Mode, MeanRejection, MeanGibbs };

struct CorrectionResult {
    std::vector<double> corrected_f;
    std::vector<double> corrected_fdagger;
    CorrectionMethod method = CorrectionMethod::Mode;
    // mode diagnostics
    std::vector<int> active_set;      // k with corrected f_k^dagger pinned at 0
    double kkt_residual = 0.0;
    int iterations = 0;
    // mean diagnostics
    std::int64_t draws_used = 0;
    double acceptance_rate = 1.0;
    std::vector<double> mc_standard_errors;  // per entry of corrected_f
};

// Mode of the truncated-normal posterior: minimizer of
// (f - fhat)' Sigma^-1 (f - fhat) subject to C f >= 0, solved as a
// nonnegativity-constrained QP in f_dagger coordinates.
CorrectionResult project_mode(const MarginalEstimates& est, const CovarianceSpec& cov,
                              const ModelConfig& config, bool fix_f1 = false);

// One draw from N(mu, sigma^2) conditioned on exceeding `lower`.
double truncated_normal_draw(double mu, double sigma, double lower, std::mt19937_64& rng);

// Mean of the truncated-normal posterior by rejection or Gibbs sampling in
// f_dagger space.
CorrectionResult posterior_mean(const MarginalEstimates& est, const CovarianceSpec& cov,
                                const ModelConfig& config, CorrectionMethod method,
                                std::int64_t draws, std::int64_t burn_in, std::uint64_t seed);

}  // namespace mixaudit
