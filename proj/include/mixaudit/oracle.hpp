#pragma once

#include <vector>

#include "mixaudit/classes.hpp"
#include "mixaudit/model_config.hpp"

namespace mixaudit {

// Brute-force enumeration of the collapsed mixture model on binary data with
// per-class Beta component marginals.  Everything is exact up to long-double
// rounding; sized for n <= 8, k <= 5.
struct BetaSpec {
    double a = 1.0;
    double b = 1.0;
};

struct OracleProblem {
    std::vector<int> data;          // 0/1 observations, length n <= 8
    std::vector<double> alpha;      // per component, 1-based order
    std::vector<BetaSpec> beta;     // per component
    ClassStructure classes;         // components alike iff same (alpha, a, b)

    OracleProblem(std::vector<int> data_, std::vector<double> alpha_,
                  std::vector<BetaSpec> beta_);

    int n() const { return static_cast<int>(data.size()); }
    int max_components() const { return static_cast<int>(alpha.size()); }
    void validate(int k) const;

    // All-alike convenience constructor.
    static OracleProblem symmetric(std::vector<int> data, double alpha, BetaSpec beta,
                                   int k_max);
};

using Allocation = std::vector<int>;  // component index per observation, 1-based

// f(g | k, alpha): Dirichlet-multinomial allocation mass, Eq.-exact.
long double allocation_prior(const Allocation& g, int k, const OracleProblem& problem);

// f(x | k, g): product of per-component conjugate marginals.
long double data_likelihood(const Allocation& g, int k, const OracleProblem& problem);

// f_k: exhaustive sum over all k^n allocations.
long double enumerate_fk(const OracleProblem& problem, int k);

// f_t^*: allocations using component t and none higher.
long double enumerate_fstar(const OracleProblem& problem, int t);

// f_h^dagger for an occupancy pattern h, summed at s = s(h).
long double enumerate_fdagger(const OracleProblem& problem, const Pattern& h);

// Data-free prior of the number of nonempty components given k, h = 1..min(k,n).
std::vector<long double> enumerate_h_given_k(const OracleProblem& problem, int k);

// Data-dependent f(h|k, x)-style unnormalized masses (sum of f(x|k,g) f(g|k)
// over allocations with exactly h nonempty components), h = 1..min(k,n).
std::vector<long double> enumerate_fx_by_h(const OracleProblem& problem, int k);

}  // namespace mixaudit
