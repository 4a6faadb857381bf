#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "mixaudit/model_config.hpp"
#include "mixaudit/signed_log.hpp"

namespace mixaudit {

// log C(k, t) via log-gamma
double log_binomial(int k, int t);

// a_{kt} = Gamma(a0k)/Gamma(a0k+n) * Gamma(a0t+n)/Gamma(a0t), 1 <= t <= k.
// Strictly positive; returned as a positive SignedLog.
SignedLog log_a(int k, int t, const ModelConfig& config);

// Lower-triangular tables of log a_{kt} and log b_{kt} = log C(k,t) + log a_{kt}.
class CoeffTables {
  public:
    CoeffTables(int K, const ModelConfig& config);

    int K() const { return K_; }
    int n() const { return n_; }
    double la(int k, int t) const { return log_a_[idx(k, t)]; }
    double lb(int k, int t) const { return log_b_[idx(k, t)]; }
    // a_{kt}, b_{kt} as plain doubles
    double a(int k, int t) const { return std::exp(la(k, t)); }
    double b(int k, int t) const { return std::exp(lb(k, t)); }

  private:
    int idx(int k, int t) const;
    int K_;
    int n_;
    std::vector<double> log_a_;
    std::vector<double> log_b_;
};

CoeffTables build_tables(int K, const ModelConfig& config);

// Row k of C = B^{-1}: c_{kt} = (-1)^{k+t} b_{kt}, t = 1..k.
std::vector<SignedLog> inverse_row(int k, const CoeffTables& tables);

// Convergence diagnostic for the normalizing series of the posterior of k.
struct PropernessReport {
    enum class Verdict { Convergent, Divergent, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    int j_begin = 0;                 // first j (== n)
    std::vector<double> terms;       // c_j, j = j_begin..j_max
    std::vector<double> lower;       // pi(j) / (n*alpha + n - 1)^n
    std::vector<double> upper;       // pi(j) / alpha^n
    std::vector<double> partial_sums;
    std::string note;
};

int default_properness_jmax(const ModelConfig& config);
PropernessReport properness_diagnostic(const ModelConfig& config, int j_max);

}  // namespace mixaudit
