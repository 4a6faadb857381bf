#include "mixaudit/correction.hpp"

#include <cmath>
#include <stdexcept>

#include "mixaudit/coefficients.hpp"

namespace mixaudit {

CovarianceSpec CovarianceSpec::multinomial(std::int64_t draws) {
    if (draws < 1) throw std::invalid_argument("CovarianceSpec: mcmc_draws must be >= 1");
    CovarianceSpec c;
    c.kind = Kind::Multinomial;
    c.mcmc_draws = draws;
    return c;
}

CovarianceSpec CovarianceSpec::diagonal(std::vector<double> vars) {
    for (double v : vars)
        if (!(v > 0.0)) throw std::invalid_argument("CovarianceSpec: variances must be positive");
    CovarianceSpec c;
    c.kind = Kind::Diagonal;
    c.variances = std::move(vars);
    return c;
}

CovarianceSpec CovarianceSpec::full_matrix(Eigen::MatrixXd m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("CovarianceSpec: matrix not square");
    if (!m.isApprox(m.transpose(), 1e-10))
        throw std::invalid_argument("CovarianceSpec: matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument("CovarianceSpec: matrix not positive definite");
    CovarianceSpec c;
    c.kind = Kind::Full;
    c.full = std::move(m);
    return c;
}

Eigen::MatrixXd CovarianceSpec::materialize(const std::vector<double>& fhat) const {
    const int K = static_cast<int>(fhat.size());
    switch (kind) {
        case Kind::Full:
            if (full.rows() != K) throw std::invalid_argument("CovarianceSpec: size mismatch");
            return full;
        case Kind::Diagonal: {
            if (static_cast<int>(variances.size()) != K)
                throw std::invalid_argument("CovarianceSpec: size mismatch");
            Eigen::MatrixXd m = Eigen::MatrixXd::Zero(K, K);
            for (int i = 0; i < K; ++i) m(i, i) = variances[i];
            return m;
        }
        case Kind::Multinomial: {
            const double N = static_cast<double>(mcmc_draws);
            Eigen::MatrixXd m = Eigen::MatrixXd::Zero(K, K);
            for (int i = 0; i < K; ++i) {
                // clamp p away from {0,1} so zero estimates keep a positive variance
                const double p = std::min(std::max(fhat[i], 0.5 / N), 1.0 - 0.5 / N);
                m(i, i) = p * (1.0 - p) / N;
            }
            return m;
        }
    }
    throw std::logic_error("CovarianceSpec: unreachable");
}

namespace {

// B and C = B^-1 as dense matrices from the coefficient tables
Eigen::MatrixXd matrix_B(const CoeffTables& t) {
    const int K = t.K();
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(K, K);
    for (int k = 1; k <= K; ++k)
        for (int h = 1; h <= std::min(k, t.n()); ++h) B(k - 1, h - 1) = t.b(k, h);
    return B;
}

Eigen::MatrixXd matrix_C(const CoeffTables& t) {
    const int K = t.K();
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(K, K);
    for (int k = 1; k <= K; ++k)
        for (int h = 1; h <= k; ++h)
            C(k - 1, h - 1) = (((k + h) % 2 == 0) ? 1.0 : -1.0) * t.b(k, h);
    return C;
}

struct Problem {
    Eigen::MatrixXd B, C, Sigma;
    Eigen::VectorXd fhat;
};

Problem setup(const MarginalEstimates& est, const CovarianceSpec& cov, const ModelConfig& config) {
    est.validate();
    (void)config.symmetric_alpha();
    const int K = est.K();
    if (K > config.n) throw std::invalid_argument("correction: K > n not supported");
    const std::vector<double> f = est.linear_values();
    const CoeffTables tables(K, config);
    Problem p;
    p.B = matrix_B(tables);
    p.C = matrix_C(tables);
    p.Sigma = cov.materialize(f);
    p.fhat = Eigen::Map<const Eigen::VectorXd>(f.data(), K);
    return p;
}

// Lawson-Hanson style active set for min 1/2 x'Qx - c'x s.t. x >= 0,
// with optional coordinates held at fixed values.
Eigen::VectorXd nnls_active_set(const Eigen::MatrixXd& Q, const Eigen::VectorXd& c,
                                const std::vector<std::pair<int, double>>& fixed,
                                int* iterations_out) {
    const int K = static_cast<int>(c.size());
    std::vector<bool> is_fixed(K, false);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(K);
    for (auto [i, v] : fixed) {
        is_fixed[i] = true;
        x[i] = v;
    }
    std::vector<bool> passive(K, false);
    int iters = 0;
    const double tol = 1e-12 * (1.0 + c.cwiseAbs().maxCoeff());

    auto solve_passive = [&](Eigen::VectorXd& z) {
        std::vector<int> idx;
        for (int i = 0; i < K; ++i)
            if (passive[i] && !is_fixed[i]) idx.push_back(i);
        z = x;
        if (idx.empty()) return;
        // right-hand side with fixed coordinates folded in
        Eigen::VectorXd rhs(idx.size());
        Eigen::MatrixXd Qp(idx.size(), idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a) {
            double r = c[idx[a]];
            for (auto [i, v] : fixed) r -= Q(idx[a], i) * v;
            rhs[a] = r;
            for (std::size_t b = 0; b < idx.size(); ++b) Qp(a, b) = Q(idx[a], idx[b]);
        }
        Eigen::VectorXd sol = Qp.ldlt().solve(rhs);
        for (int i = 0; i < K; ++i)
            if (passive[i] && !is_fixed[i]) z[i] = 0.0;
        for (std::size_t a = 0; a < idx.size(); ++a) z[idx[a]] = sol[a];
    };

    while (true) {
        if (++iters > 50 * K)
            throw std::runtime_error("project_mode: active-set solver failed to converge");
        Eigen::VectorXd grad = Q * x - c;
        int best = -1;
        double best_w = tol;
        for (int i = 0; i < K; ++i) {
            if (passive[i] || is_fixed[i]) continue;
            if (-grad[i] > best_w) {
                best_w = -grad[i];
                best = i;
            }
        }
        if (best < 0) break;
        passive[best] = true;

        while (true) {
            Eigen::VectorXd z;
            solve_passive(z);
            bool all_pos = true;
            double best_step = 1.0;
            for (int i = 0; i < K; ++i) {
                if (!passive[i] || is_fixed[i]) continue;
                if (z[i] <= 0.0) {
                    all_pos = false;
                    const double step = x[i] / (x[i] - z[i]);
                    best_step = std::min(best_step, step);
                }
            }
            if (all_pos) {
                x = z;
                break;
            }
            x += best_step * (z - x);
            const double xtol = 1e-10 * (1.0 + x.cwiseAbs().maxCoeff());
            for (int i = 0; i < K; ++i)
                if (passive[i] && !is_fixed[i] && x[i] <= xtol) {
                    x[i] = 0.0;
                    passive[i] = false;
                }
        }
    }
    if (iterations_out) *iterations_out = iters;
    return x;
}

}  // namespace

CorrectionResult project_mode(const MarginalEstimates& est, const CovarianceSpec& cov,
                              const ModelConfig& config, bool fix_f1) {
    Problem p = setup(est, cov, config);
    const int K = static_cast<int>(p.fhat.size());

    const Eigen::LLT<Eigen::MatrixXd> llt(p.Sigma);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("project_mode: covariance not positive definite");
    const Eigen::MatrixXd A = llt.solve(Eigen::MatrixXd::Identity(K, K));  // Sigma^-1
    const Eigen::MatrixXd Q = p.B.transpose() * A * p.B;
    const Eigen::VectorXd c = p.B.transpose() * (A * p.fhat);

    std::vector<std::pair<int, double>> fixed;
    if (fix_f1) fixed.emplace_back(0, p.fhat[0]);  // f_1^dagger = f_1

    CorrectionResult res;
    res.method = CorrectionMethod::Mode;
    Eigen::VectorXd x = nnls_active_set(Q, c, fixed, &res.iterations);

    for (int i = 0; i < K; ++i)
        if (std::abs(x[i]) < 1e-12) x[i] = 0.0;

    const Eigen::VectorXd f = p.B * x;
    res.corrected_f.assign(f.data(), f.data() + K);
    res.corrected_fdagger.assign(x.data(), x.data() + K);
    for (int i = 0; i < K; ++i)
        if (x[i] == 0.0) res.active_set.push_back(i + 1);

    // KKT: grad = Qx - c must equal the multiplier vector, lambda >= 0 on the
    // active set, complementary slackness lambda_k x_k = 0.
    const Eigen::VectorXd grad = Q * x - c;
    double resid = 0.0;
    for (int i = 0; i < K; ++i) {
        if (fix_f1 && i == 0) continue;
        if (x[i] > 0.0) resid = std::max(resid, std::abs(grad[i]));
        else resid = std::max(resid, std::max(0.0, -grad[i]));
        resid = std::max(resid, std::abs(grad[i] * x[i]));
    }
    const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
    res.kkt_residual = resid / scale;
    return res;
}

double truncated_normal_draw(double mu, double sigma, double lower, std::mt19937_64& rng) {
    if (!(sigma > 0.0)) throw std::invalid_argument("truncated_normal_draw: sigma must be > 0");
    std::normal_distribution<double> norm(0.0, 1.0);
    if (!std::isfinite(lower)) return mu + sigma * norm(rng);
    const double a = (lower - mu) / sigma;
    if (a < 0.5) {
        // direct rejection against the untruncated normal
        while (true) {
            const double z = norm(rng);
            if (z >= a) return mu + sigma * z;
        }
    }
    // Robert (1995) exponential proposal for the tail
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double lam = 0.5 * (a + std::sqrt(a * a + 4.0));
    while (true) {
        const double u = unif(rng);
        const double z = a - std::log1p(-u) / lam;
        const double rho = std::exp(-0.5 * (z - lam) * (z - lam));
        if (unif(rng) <= rho) return mu + sigma * z;
    }
}

CorrectionResult posterior_mean(const MarginalEstimates& est, const CovarianceSpec& cov,
                                const ModelConfig& config, CorrectionMethod method,
                                std::int64_t draws, std::int64_t burn_in, std::uint64_t seed) {
    if (method == CorrectionMethod::Mode)
        throw std::invalid_argument("posterior_mean: method must be rejection or Gibbs");
    if (draws < 1000) throw std::invalid_argument("posterior_mean: need draws >= 1000");

    Problem p = setup(est, cov, config);
    const int K = static_cast<int>(p.fhat.size());

    // distribution of f_dagger: N(C fhat, C Sigma C') truncated to x >= 0
    const Eigen::VectorXd mu = p.C * p.fhat;
    const Eigen::MatrixXd S = p.C * p.Sigma * p.C.transpose();

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> norm(0.0, 1.0);

    CorrectionResult res;
    res.method = method;

    const int n_batches = 50;
    const std::int64_t batch_len = std::max<std::int64_t>(1, draws / n_batches);
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(K);
    Eigen::MatrixXd batch_means = Eigen::MatrixXd::Zero(n_batches, K);  // in f space
    Eigen::VectorXd batch_sum = Eigen::VectorXd::Zero(K);
    std::int64_t kept = 0;
    int batch = 0;

    auto record = [&](const Eigen::VectorXd& x) {
        const Eigen::VectorXd f = p.B * x;
        sum += x;
        batch_sum += f;
        ++kept;
        if (kept % batch_len == 0 && batch < n_batches) {
            batch_means.row(batch) = (batch_sum / static_cast<double>(batch_len)).transpose();
            batch_sum.setZero();
            ++batch;
        }
    };

    if (method == CorrectionMethod::MeanRejection) {
        const Eigen::LLT<Eigen::MatrixXd> llt(S);
        if (llt.info() != Eigen::Success)
            throw std::invalid_argument("posterior_mean: transformed covariance not PD");
        const Eigen::MatrixXd L = llt.matrixL();
        std::int64_t proposals = 0;
        Eigen::VectorXd z(K);
        while (kept < draws) {
            for (int i = 0; i < K; ++i) z[i] = norm(rng);
            const Eigen::VectorXd x = mu + L * z;
            ++proposals;
            if ((x.array() >= 0.0).all()) record(x);
            if (proposals == 100000 && kept < proposals / 10000)
                throw std::runtime_error(
                    "posterior_mean: rejection acceptance rate below 1e-4; use the Gibbs method");
        }
        res.acceptance_rate = static_cast<double>(kept) / static_cast<double>(proposals);
        res.draws_used = kept;
    } else {
        const Eigen::MatrixXd Lam = S.llt().solve(Eigen::MatrixXd::Identity(K, K));  // precision
        Eigen::VectorXd x = mu.cwiseMax(1e-8 * mu.cwiseAbs().maxCoeff());
        for (std::int64_t it = 0; it < burn_in + draws; ++it) {
            for (int i = 0; i < K; ++i) {
                double dot = 0.0;
                for (int j = 0; j < K; ++j)
                    if (j != i) dot += Lam(i, j) * (x[j] - mu[j]);
                const double cond_mu = mu[i] - dot / Lam(i, i);
                const double cond_sd = std::sqrt(1.0 / Lam(i, i));
                x[i] = truncated_normal_draw(cond_mu, cond_sd, 0.0, rng);
            }
            if (it >= burn_in) record(x);
        }
        res.draws_used = kept;
    }

    const Eigen::VectorXd mean_x = sum / static_cast<double>(kept);
    const Eigen::VectorXd mean_f = p.B * mean_x;
    res.corrected_fdagger.assign(mean_x.data(), mean_x.data() + K);
    res.corrected_f.assign(mean_f.data(), mean_f.data() + K);

    // MC standard errors by batch means
    res.mc_standard_errors.assign(K, 0.0);
    const int used_batches = batch;
    if (used_batches >= 2) {
        for (int i = 0; i < K; ++i) {
            const double bm = batch_means.col(i).head(used_batches).mean();
            double var = 0.0;
            for (int b = 0; b < used_batches; ++b) {
                const double d = batch_means(b, i) - bm;
                var += d * d;
            }
            var /= (used_batches - 1);
            res.mc_standard_errors[i] = std::sqrt(var / used_batches);
        }
    }
    return res;
}

}  // namespace mixaudit
