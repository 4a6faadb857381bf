#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixaudit {

// Prior on the number of components k.
struct KPrior {
    enum class Kind { Uniform, Weights };
    // Continuation rule beyond the listed weights.
    enum class Tail {
        None,      // support ends at the last listed value
        Geometric, // summable tail, w(len + j) = w(len) * 2^-j
        Constant,  // w(len + j) = w(len); improper when w(len) > 0
    };

    Kind kind = Kind::Uniform;
    int k_max = 30;                // Uniform
    std::vector<double> weights;   // Weights, indexed from k = 1
    Tail tail = Tail::None;

    static KPrior uniform(int k_max) {
        if (k_max < 1) throw std::invalid_argument("KPrior: k_max must be >= 1");
        KPrior p;
        p.kind = Kind::Uniform;
        p.k_max = k_max;
        return p;
    }
    static KPrior from_weights(std::vector<double> w, Tail tail = Tail::None) {
        bool any_pos = false;
        for (double v : w) {
            if (v < 0) throw std::invalid_argument("KPrior: negative weight");
            if (v > 0) any_pos = true;
        }
        if (!any_pos) throw std::invalid_argument("KPrior: all weights zero");
        KPrior p;
        p.kind = Kind::Weights;
        p.weights = std::move(w);
        p.tail = tail;
        return p;
    }

    // Unnormalized prior weight of k (k >= 1).
    double weight(int k) const {
        if (k < 1) return 0.0;
        if (kind == Kind::Uniform) return k <= k_max ? 1.0 : 0.0;
        const int len = static_cast<int>(weights.size());
        if (k <= len) return weights[k - 1];
        switch (tail) {
            case Tail::None: return 0.0;
            case Tail::Geometric: return weights[len - 1] * std::pow(0.5, k - len);
            case Tail::Constant: return weights[len - 1];
        }
        return 0.0;
    }

    bool finite_support() const {
        if (kind == Kind::Uniform) return true;
        if (tail == Tail::None) return true;
        return weights.empty() || weights.back() == 0.0;
    }
    bool proper() const {
        return finite_support() || tail == Tail::Geometric;
    }
    // Last k with positive weight for finite-support priors.
    int support_end() const {
        if (kind == Kind::Uniform) return k_max;
        if (!finite_support())
            throw std::logic_error("KPrior: infinite support");
        return static_cast<int>(weights.size());
    }
};

// Sample size, Dirichlet hyperparameters and prior on k; parameterizes all
// the linking identities.
struct ModelConfig {
    int n = 1;
    std::vector<double> alpha;  // size 1: symmetric; size > 1: per component
    KPrior k_prior;

    ModelConfig() = default;
    ModelConfig(int n_, double sym_alpha, KPrior prior = KPrior::uniform(30))
        : n(n_), alpha{sym_alpha}, k_prior(std::move(prior)) {
        validate();
    }
    ModelConfig(int n_, std::vector<double> alphas, KPrior prior = KPrior::uniform(30))
        : n(n_), alpha(std::move(alphas)), k_prior(std::move(prior)) {
        validate();
    }

    void validate() const {
        if (n < 1) throw std::invalid_argument("ModelConfig: n must be >= 1");
        if (alpha.empty()) throw std::invalid_argument("ModelConfig: alpha missing");
        for (double a : alpha)
            if (!(a > 0)) throw std::invalid_argument("ModelConfig: alpha must be positive");
    }

    bool symmetric() const { return alpha.size() == 1; }
    double symmetric_alpha() const {
        if (!symmetric())
            throw std::invalid_argument("operation requires all-equivalent components (symmetric alpha)");
        return alpha[0];
    }
    // alpha_{0k} = sum of the first k hyperparameters
    double alpha0(int k) const {
        if (k < 1) throw std::invalid_argument("alpha0: k must be >= 1");
        if (symmetric()) return k * alpha[0];
        if (k > static_cast<int>(alpha.size()))
            throw std::invalid_argument("alpha0: k exceeds listed per-component alphas");
        double s = 0.0;
        for (int j = 0; j < k; ++j) s += alpha[j];
        return s;
    }
    double alpha_of(int j) const {  // 1-based component index
        if (symmetric()) return alpha[0];
        if (j < 1 || j > static_cast<int>(alpha.size()))
            throw std::invalid_argument("alpha_of: component index out of range");
        return alpha[j - 1];
    }
};

}  // namespace mixaudit
