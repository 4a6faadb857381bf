#include "mixaudit/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mixaudit {

void MarginalEstimates::validate() const {
    if (values.empty()) throw std::invalid_argument("MarginalEstimates: empty values");
    if (scale_kind != ScaleKind::LogMarginals) {
        for (double v : values)
            if (v < 0.0) throw std::invalid_argument("MarginalEstimates: negative value");
    }
    if (residual_tail_mass && *residual_tail_mass < 0.0)
        throw std::invalid_argument("MarginalEstimates: negative residual_tail_mass");
}

bool MarginalEstimates::has_zeros() const {
    if (scale_kind == ScaleKind::LogMarginals) return false;
    return std::any_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
}

std::vector<double> MarginalEstimates::linear_values() const {
    validate();
    if (scale_kind != ScaleKind::LogMarginals) return values;
    const double m = *std::max_element(values.begin(), values.end());
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = std::exp(values[i] - m);
    return out;
}

std::vector<int> ConstraintReport::violating_k() const {
    std::vector<int> ks;
    for (const Violation& v : violations) ks.push_back(v.k);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
}

std::vector<double> f_to_fdagger(const MarginalEstimates& est, const ModelConfig& config,
                                 std::vector<double>* condition_out) {
    est.validate();
    (void)config.symmetric_alpha();
    const int K = est.K();
    if (K > config.n)
        throw std::invalid_argument("f_to_fdagger: K > n (the inversion holds only for k <= n)");

    const std::vector<double> f = est.linear_values();
    const CoeffTables tables(K, config);

    std::vector<double> fdag(K);
    if (condition_out) condition_out->assign(K, 1.0);
    std::vector<SignedLog> terms;
    for (int k = 1; k <= K; ++k) {
        terms.clear();
        const std::vector<SignedLog> row = inverse_row(k, tables);
        for (int t = 1; t <= k; ++t)
            terms.push_back(sl_mul(row[t - 1], SignedLog::from_double(f[t - 1])));
        const SumResult r = sl_sum(terms);
        fdag[k - 1] = r.value.to_double();
        if (condition_out) (*condition_out)[k - 1] = r.condition;
    }
    return fdag;
}

std::vector<double> fdagger_to_f(const std::vector<double>& fdagger, const ModelConfig& config,
                                 int K) {
    (void)config.symmetric_alpha();
    if (K < 1) throw std::invalid_argument("fdagger_to_f: K must be >= 1");
    const int H = std::min(K, config.n);
    if (static_cast<int>(fdagger.size()) < H)
        throw std::invalid_argument("fdagger_to_f: need at least min(K, n) entries");
    bool any_pos = false;
    for (double v : fdagger) {
        if (v < 0.0) throw std::invalid_argument("fdagger_to_f: negative entry");
        if (v > 0.0) any_pos = true;
    }
    if (!any_pos) throw std::invalid_argument("fdagger_to_f: all entries zero");

    const CoeffTables tables(K, config);
    std::vector<double> f(K);
    std::vector<SignedLog> terms;
    for (int k = 1; k <= K; ++k) {
        terms.clear();
        for (int h = 1; h <= std::min(k, config.n); ++h)
            terms.push_back(sl_mul(SignedLog(1, tables.lb(k, h)),
                                   SignedLog::from_double(fdagger[h - 1])));
        f[k - 1] = sl_sum(terms).value.to_double();
    }
    return f;
}

std::vector<double> fstar_decompose(const MarginalEstimates& est, const ModelConfig& config) {
    est.validate();
    const int K = est.K();
    const std::vector<double> f = est.linear_values();
    std::vector<double> fstar(K);
    fstar[0] = f[0];
    for (int k = 2; k <= K; ++k) {
        const double a = log_a(k, k - 1, config).to_double();
        fstar[k - 1] = f[k - 1] - a * f[k - 2];
    }
    return fstar;
}

double extend_f(const MarginalEstimates& est, const ModelConfig& config, int k) {
    est.validate();
    (void)config.symmetric_alpha();
    const int n = config.n;
    if (k <= n) throw std::invalid_argument("extend_f: requires k > n");
    if (est.K() < n) throw std::invalid_argument("extend_f: need the full f_1..f_n");

    const std::vector<double> f = est.linear_values();
    std::vector<SignedLog> terms;
    for (int t = 1; t <= n; ++t) {
        const int sign = ((n - t) % 2 == 0) ? 1 : -1;
        const double lm = log_binomial(k, t) + log_binomial(k - t - 1, n - t) +
                          log_a(k, t, config).log_mag;
        terms.push_back(sl_mul(SignedLog(sign, lm), SignedLog::from_double(f[t - 1])));
    }
    return sl_sum(terms).value.to_double();
}

ConstraintReport check_constraints(const MarginalEstimates& est, const ModelConfig& config) {
    est.validate();
    const int K = est.K();
    const std::vector<double> f = est.linear_values();

    ConstraintReport rep;
    rep.advisory_only = est.has_zeros();

    // negative margins within rounding error of the input scale are noise,
    // not violations
    double scale = 0.0;
    for (double v : f) scale = std::max(scale, std::abs(v));
    const double tol = 1e-10 * scale;

    rep.pairwise_margins.resize(K);
    rep.pairwise_margins[0] = f[0];
    for (int k = 2; k <= K; ++k) {
        const double a = log_a(k, k - 1, config).to_double();
        const double margin = f[k - 1] - a * f[k - 2];
        rep.pairwise_margins[k - 1] = margin;
        if (margin < -tol)
            rep.violations.push_back({k, margin, Violation::Kind::Pairwise});
    }

    if (config.symmetric() && K <= config.n) {
        rep.fdagger = f_to_fdagger(est, config, &rep.condition_estimates);
        rep.full_check_done = true;
        for (int k = 1; k <= K; ++k)
            if (rep.fdagger[k - 1] < -tol)
                rep.violations.push_back({k, rep.fdagger[k - 1], Violation::Kind::Full});
    } else {
        rep.notice = config.symmetric()
                         ? "full check skipped: K > n"
                         : "full check skipped: per-component alpha (pairwise check only)";
    }
    return rep;
}

}  // namespace mixaudit
