#include "mixaudit/verify.hpp"

#include <cmath>
#include <map>

#include "mixaudit/coefficients.hpp"
#include "mixaudit/occupancy.hpp"
#include "mixaudit/oracle.hpp"
#include "mixaudit/transforms.hpp"

namespace mixaudit {

bool VerifyReport::all_passed() const {
    for (const IdentityCheck& c : checks)
        if (!c.passed()) return false;
    return true;
}

namespace {

double rel_err(long double got, long double want) {
    const long double denom = std::max(fabsl(want), 1e-300L);
    return static_cast<double>(fabsl(got - want) / denom);
}

std::vector<int> test_data(int n) {
    std::vector<int> full{1, 0, 1, 1, 0, 1, 0, 0};
    return {full.begin(), full.begin() + n};
}

struct Accum {
    std::map<std::string, IdentityCheck> by_name;
    void note(const std::string& name, double err, double tol = 1e-12) {
        IdentityCheck& c = by_name[name];
        c.name = name;
        c.tolerance = tol;
        c.max_rel_error = std::max(c.max_rel_error, err);
    }
};

// oracle problem + coefficient config for one grid cell
struct Cell {
    OracleProblem problem;
    ModelConfig config;
};

Cell make_alike(int n, double alpha, int k_max) {
    return {OracleProblem::symmetric(test_data(n), alpha, BetaSpec{1.0, 1.0}, k_max),
            ModelConfig(n, alpha)};
}

Cell make_distinct(int n, double scale, int k_max) {
    std::vector<double> alphas{0.6, 1.0, 1.4, 0.8, 1.2};
    alphas.resize(k_max);
    for (double& a : alphas) a *= scale;
    std::vector<BetaSpec> betas;
    for (int j = 0; j < k_max; ++j)
        betas.push_back(BetaSpec{1.0 + j, 1.0 + 0.5 * j});
    return {OracleProblem(test_data(n), alphas, betas), ModelConfig(n, alphas)};
}

Cell make_mixed(int n, double alpha, int k_max) {
    // two classes: components 1,2,4 alike; 3,5 alike (same alpha, different Beta)
    std::vector<double> alphas(k_max, alpha);
    std::vector<BetaSpec> betas;
    for (int j = 1; j <= k_max; ++j)
        betas.push_back((j == 3 || j == 5) ? BetaSpec{2.0, 2.0} : BetaSpec{1.0, 1.0});
    return {OracleProblem(test_data(n), alphas, betas), ModelConfig(n, alphas)};
}

void check_general(Accum& acc, const Cell& cell, const std::string& tag) {
    const OracleProblem& pr = cell.problem;
    const ModelConfig& cfg = cell.config;
    const int K = pr.max_components();
    const ClassStructure& cs = pr.classes;

    std::vector<long double> fk(K + 1), fstar(K + 1);
    for (int k = 1; k <= K; ++k) {
        fk[k] = enumerate_fk(pr, k);
        fstar[k] = enumerate_fstar(pr, k);
    }

    // f_dagger for every pattern with minimal accommodating size r = 1..K
    std::map<Pattern, double> fdag;
    for (int r = 1; r <= K; ++r)
        for (const Pattern& h : enumerate_H(r, cs, cfg.n, r))
            fdag[h] = static_cast<double>(enumerate_fdagger(pr, h));

    for (int k = 1; k <= K; ++k) {
        // Eq. (11): f_k = sum_t a_kt f_t*
        long double rhs11 = 0.0L;
        for (int t = 1; t <= k; ++t)
            rhs11 += (long double)log_a(k, t, cfg).to_double() * fstar[t];
        acc.note(tag + " eq11", rel_err(rhs11, fk[k]));

        // Eq. (12): f_k = a_{k,k-1} f_{k-1} + f_k*
        if (k >= 2) {
            const long double rhs12 =
                (long double)log_a(k, k - 1, cfg).to_double() * fk[k - 1] + fstar[k];
            acc.note(tag + " eq12", rel_err(rhs12, fk[k]));
        }

        // Eq. (23) and Eq. (25) via the class machinery
        acc.note(tag + " eq23", rel_err(represent_fk(fdag, k, cs, cfg), fk[k]));
        acc.note(tag + " eq25", rel_err(represent_fk_recursive(fdag, k, cs, cfg), fk[k]));
    }

    // Conditions C.1 / C.2 spot checks: g in G_t*, t < k
    for (int t = 1; t < K; ++t) {
        const int k = K;
        const double a_kt = log_a(k, t, cfg).to_double();
        Allocation g(pr.n(), 1);
        // enumerate g in {1..t}^n containing t
        const int n = pr.n();
        std::vector<int> digits(n, 1);
        while (true) {
            bool uses_t = false;
            for (int v : digits)
                if (v == t) { uses_t = true; break; }
            if (uses_t) {
                acc.note(tag + " C1",
                         rel_err(data_likelihood(digits, k, pr), data_likelihood(digits, t, pr)));
                acc.note(tag + " C2",
                         rel_err(allocation_prior(digits, k, pr) / allocation_prior(digits, t, pr),
                                 (long double)a_kt));
            }
            int i = 0;
            while (i < n && digits[i] == t) digits[i++] = 1;
            if (i == n) break;
            ++digits[i];
        }
        (void)g;
    }
}

void check_alike_only(Accum& acc, const Cell& cell, const std::string& tag) {
    const OracleProblem& pr = cell.problem;
    const ModelConfig& cfg = cell.config;
    const int K = pr.max_components();
    const int n = cfg.n;

    std::vector<long double> fk(K + 1);
    for (int k = 1; k <= K; ++k) fk[k] = enumerate_fk(pr, k);

    // scalar-pattern f_h^dagger
    std::vector<double> fdag;
    for (int h = 1; h <= std::min(K, n); ++h)
        fdag.push_back(static_cast<double>(enumerate_fdagger(pr, Pattern{h})));

    // Eq. (26): reconstruct every f_k from the f_h^dagger
    const std::vector<double> f26 = fdagger_to_f(fdag, cfg, K);
    for (int k = 1; k <= K; ++k) acc.note(tag + " eq26", rel_err(f26[k - 1], fk[k]));

    // Eq. (27): recursion form
    const CoeffTables tables(K, cfg);
    for (int k = 2; k <= K; ++k) {
        long double rhs = (long double)tables.a(k, k - 1) * fk[k - 1];
        for (int h = 1; h <= std::min(k, n); ++h)
            rhs += (long double)(std::exp(log_binomial(k - 1, h - 1)) * tables.a(k, h)) *
                   fdag[h - 1];
        acc.note(tag + " eq27", rel_err(rhs, fk[k]));
    }

    // Eq. (35): invert the enumerated f_1..f_K, K <= n
    if (K <= n) {
        MarginalEstimates est;
        est.scale_kind = ScaleKind::RawMarginals;
        for (int k = 1; k <= K; ++k) est.values.push_back(static_cast<double>(fk[k]));
        const std::vector<double> got = f_to_fdagger(est, cfg);
        for (int k = 1; k <= K; ++k) acc.note(tag + " eq35", rel_err(got[k - 1], fdag[k - 1]));
    }

    // Eq. (37): f_k for k > n from f_1..f_n
    if (K > n) {
        MarginalEstimates est;
        est.scale_kind = ScaleKind::RawMarginals;
        for (int k = 1; k <= n; ++k) est.values.push_back(static_cast<double>(fk[k]));
        for (int k = n + 1; k <= K; ++k)
            acc.note(tag + " eq37", rel_err(extend_f(est, cfg, k), fk[k]));
    }

    // Eq. (45) == Eq. (46): occupancy closed form vs enumeration
    for (int k = 1; k <= K; ++k) {
        const std::vector<long double> by_h = enumerate_h_given_k(pr, k);
        for (int h = 1; h <= std::min(k, n); ++h)
            acc.note(tag + " eq45=46", rel_err(prior_h_given_k(h, k, cfg), by_h[h - 1]));
    }
}

}  // namespace

VerifyReport run_identity_suite() {
    Accum acc;
    const int k_max = 5;
    for (int n = 2; n <= 6; ++n) {
        for (double alpha : {0.5, 1.0, 2.0}) {
            const Cell alike = make_alike(n, alpha, k_max);
            check_general(acc, alike, "alike");
            check_alike_only(acc, alike, "alike");

            const Cell mixed = make_mixed(n, alpha, k_max);
            check_general(acc, mixed, "mixed");
        }
        for (double scale : {0.5, 1.0, 2.0}) {
            const Cell distinct = make_distinct(n, scale, k_max);
            check_general(acc, distinct, "distinct");
        }
    }
    VerifyReport rep;
    for (auto& [name, chk] : acc.by_name) rep.checks.push_back(chk);
    return rep;
}

}  // namespace mixaudit
