#include "mixaudit/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

namespace mixaudit {

namespace {

ClassStructure derive_classes(const std::vector<double>& alpha, const std::vector<BetaSpec>& beta) {
    std::vector<int> ids;
    std::vector<std::tuple<double, double, double>> seen;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        std::tuple<double, double, double> key{alpha[j], beta[j].a, beta[j].b};
        int id = 0;
        for (std::size_t m = 0; m < seen.size(); ++m)
            if (seen[m] == key) { id = static_cast<int>(m) + 1; break; }
        if (id == 0) {
            seen.push_back(key);
            id = static_cast<int>(seen.size());
        }
        ids.push_back(id);
    }
    return ClassStructure(ids);
}

long double log_beta_fn(long double a, long double b) {
    return lgammal(a) + lgammal(b) - lgammal(a + b);
}

// iterate over all g in {1..k}^n
template <typename Fn>
void for_each_allocation(int n, int k, Fn&& fn) {
    Allocation g(n, 1);
    while (true) {
        fn(const_cast<const Allocation&>(g));
        int i = 0;
        while (i < n && g[i] == k) g[i++] = 1;
        if (i == n) break;
        ++g[i];
    }
}

}  // namespace

OracleProblem::OracleProblem(std::vector<int> data_, std::vector<double> alpha_,
                             std::vector<BetaSpec> beta_)
    : data(std::move(data_)),
      alpha(std::move(alpha_)),
      beta(std::move(beta_)),
      classes(derive_classes(alpha, beta)) {
    if (data.empty() || data.size() > 8)
        throw std::invalid_argument("OracleProblem: need 1 <= n <= 8");
    for (int x : data)
        if (x != 0 && x != 1) throw std::invalid_argument("OracleProblem: data must be binary");
    if (alpha.size() != beta.size() || alpha.empty() || alpha.size() > 5)
        throw std::invalid_argument("OracleProblem: need 1 <= k <= 5 component specs");
    for (double a : alpha)
        if (!(a > 0)) throw std::invalid_argument("OracleProblem: alpha must be positive");
    for (const BetaSpec& bs : beta)
        if (!(bs.a > 0) || !(bs.b > 0))
            throw std::invalid_argument("OracleProblem: Beta parameters must be positive");
}

OracleProblem OracleProblem::symmetric(std::vector<int> data, double alpha, BetaSpec beta,
                                       int k_max) {
    return OracleProblem(std::move(data), std::vector<double>(k_max, alpha),
                         std::vector<BetaSpec>(k_max, beta));
}

void OracleProblem::validate(int k) const {
    if (k < 1 || k > max_components())
        throw std::invalid_argument("OracleProblem: k out of range");
}

long double allocation_prior(const Allocation& g, int k, const OracleProblem& problem) {
    problem.validate(k);
    const int n = problem.n();
    long double alpha0 = 0.0L;
    for (int j = 0; j < k; ++j) alpha0 += problem.alpha[j];
    std::vector<int> counts(k, 0);
    for (int i = 0; i < n; ++i) {
        if (g[i] < 1 || g[i] > k) throw std::invalid_argument("allocation_prior: entry out of 1..k");
        ++counts[g[i] - 1];
    }
    long double lg = lgammal(alpha0) - lgammal(alpha0 + n);
    for (int j = 0; j < k; ++j)
        lg += lgammal(problem.alpha[j] + counts[j]) - lgammal((long double)problem.alpha[j]);
    return expl(lg);
}

long double data_likelihood(const Allocation& g, int k, const OracleProblem& problem) {
    problem.validate(k);
    const int n = problem.n();
    std::vector<int> count(k, 0), ones(k, 0);
    for (int i = 0; i < n; ++i) {
        ++count[g[i] - 1];
        ones[g[i] - 1] += problem.data[i];
    }
    long double lg = 0.0L;
    for (int j = 0; j < k; ++j) {
        if (count[j] == 0) continue;
        const BetaSpec& bs = problem.beta[j];
        lg += log_beta_fn(bs.a + ones[j], bs.b + count[j] - ones[j]) - log_beta_fn(bs.a, bs.b);
    }
    return expl(lg);
}

long double enumerate_fk(const OracleProblem& problem, int k) {
    problem.validate(k);
    long double sum = 0.0L;
    for_each_allocation(problem.n(), k, [&](const Allocation& g) {
        sum += data_likelihood(g, k, problem) * allocation_prior(g, k, problem);
    });
    return sum;
}

long double enumerate_fstar(const OracleProblem& problem, int t) {
    problem.validate(t);
    long double sum = 0.0L;
    for_each_allocation(problem.n(), t, [&](const Allocation& g) {
        bool uses_t = false;
        for (int v : g)
            if (v == t) { uses_t = true; break; }
        if (!uses_t) return;
        sum += data_likelihood(g, t, problem) * allocation_prior(g, t, problem);
    });
    return sum;
}

namespace {

Pattern occupancy_pattern(const Allocation& g, int t, const ClassStructure& cs) {
    const int N = cs.num_classes(t);
    std::vector<bool> used(t + 1, false);
    for (int v : g) used[v] = true;
    Pattern h(N, 0);
    for (int j = 1; j <= t; ++j)
        if (used[j]) ++h[cs.class_of(j) - 1];
    return canonical(h);
}

}  // namespace

long double enumerate_fdagger(const OracleProblem& problem, const Pattern& h_in) {
    const Pattern h = canonical(h_in);
    const int s = s_of_h(h, problem.classes);
    problem.validate(s);
    long double sum = 0.0L;
    for_each_allocation(problem.n(), s, [&](const Allocation& g) {
        bool uses_s = false;
        for (int v : g)
            if (v == s) { uses_s = true; break; }
        if (!uses_s) return;
        if (occupancy_pattern(g, s, problem.classes) != h) return;
        sum += data_likelihood(g, s, problem) * allocation_prior(g, s, problem);
    });
    return sum;
}

std::vector<long double> enumerate_h_given_k(const OracleProblem& problem, int k) {
    problem.validate(k);
    const int H = std::min(k, problem.n());
    std::vector<long double> out(H, 0.0L);
    for_each_allocation(problem.n(), k, [&](const Allocation& g) {
        std::vector<bool> used(k + 1, false);
        for (int v : g) used[v] = true;
        int h = 0;
        for (int j = 1; j <= k; ++j) h += used[j] ? 1 : 0;
        out[h - 1] += allocation_prior(g, k, problem);
    });
    return out;
}

std::vector<long double> enumerate_fx_by_h(const OracleProblem& problem, int k) {
    problem.validate(k);
    const int H = std::min(k, problem.n());
    std::vector<long double> out(H, 0.0L);
    for_each_allocation(problem.n(), k, [&](const Allocation& g) {
        std::vector<bool> used(k + 1, false);
        for (int v : g) used[v] = true;
        int h = 0;
        for (int j = 1; j <= k; ++j) h += used[j] ? 1 : 0;
        out[h - 1] += data_likelihood(g, k, problem) * allocation_prior(g, k, problem);
    });
    return out;
}

}  // namespace mixaudit
