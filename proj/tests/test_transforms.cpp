#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "mixaudit/transforms.hpp"

using namespace mixaudit;

namespace {

const std::vector<double> kGalaxyPosterior{0.000, 0.000, 0.061, 0.128, 0.182,
                                           0.199, 0.160, 0.109, 0.071, 0.040,
                                           0.023, 0.013, 0.006, 0.003, 0.002};

// published transform of the galaxy estimates, 4 decimals
const std::vector<double> kGalaxyFdagger{0.0000, 0.0000, 0.0610,  0.1194,  0.1532,
                                         0.1413, 0.0792, 0.0352,  0.0167,  0.0015,
                                         0.0035, -0.0005, -0.0008, 0.0013, -0.0006};

MarginalEstimates galaxy_estimates() {
    MarginalEstimates est;
    est.values = kGalaxyPosterior;
    est.scale_kind = ScaleKind::PosteriorProbs;
    est.residual_tail_mass = 0.003;
    return est;
}

}  // namespace

TEST_CASE("galaxy estimates map to the published signed decomposition") {
    ModelConfig cfg(82, 1.0, KPrior::uniform(30));
    MarginalEstimates est = galaxy_estimates();
    std::vector<double> cond;
    const std::vector<double> fdag = f_to_fdagger(est, cfg, &cond);
    REQUIRE(fdag.size() == 15);
    for (int k = 1; k <= 15; ++k) {
        CHECK(std::round(fdag[k - 1] * 1e4) / 1e4 ==
              doctest::Approx(kGalaxyFdagger[k - 1]).epsilon(1e-12));
        CHECK(cond[k - 1] >= 1.0);
        CHECK(cond[k - 1] < 1e6);  // cancellation is mild here
    }
}

TEST_CASE("galaxy constraint audit flags exactly k = 12, 13, 15") {
    ModelConfig cfg(82, 1.0, KPrior::uniform(30));
    const ConstraintReport rep = check_constraints(galaxy_estimates(), cfg);
    CHECK(rep.full_check_done);
    CHECK(rep.advisory_only);  // exact zeros at k = 1, 2
    CHECK(rep.violating_k() == std::vector<int>{12, 13, 15});
    for (const Violation& v : rep.violations) CHECK(v.kind == Violation::Kind::Full);
    // pairwise constraints all hold for this input
    for (double m : rep.pairwise_margins) CHECK(m >= 0.0);
}

TEST_CASE("round trip f -> fdagger -> f") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (double alpha : {0.5, 1.0, 2.0}) {
        ModelConfig cfg(40, alpha);
        std::vector<double> fdag(12);
        for (double& v : fdag) v = unif(rng);
        const std::vector<double> f = fdagger_to_f(fdag, cfg, 12);
        MarginalEstimates est;
        est.values = f;
        est.scale_kind = ScaleKind::RawMarginals;
        const std::vector<double> back = f_to_fdagger(est, cfg);
        for (int k = 0; k < 12; ++k)
            CHECK(std::abs(back[k] - fdag[k]) < 1e-10 * std::max(1.0, std::abs(fdag[k])));

        // a consistent f never triggers a violation
        const ConstraintReport rep = check_constraints(est, cfg);
        CHECK(rep.violations.empty());
    }
}

TEST_CASE("fstar decomposition matches pairwise margins") {
    ModelConfig cfg(82, 1.0);
    MarginalEstimates est = galaxy_estimates();
    const std::vector<double> fstar = fstar_decompose(est, cfg);
    const ConstraintReport rep = check_constraints(est, cfg);
    REQUIRE(fstar.size() == rep.pairwise_margins.size());
    for (std::size_t i = 0; i < fstar.size(); ++i)
        CHECK(fstar[i] == doctest::Approx(rep.pairwise_margins[i]).epsilon(1e-14));
}

TEST_CASE("extension past the sample size agrees with the capped expansion") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    for (int n : {3, 5, 8}) {
        ModelConfig cfg(n, 1.0);
        std::vector<double> fdag(n);
        for (double& v : fdag) v = unif(rng);
        const int K = n + 4;
        const std::vector<double> f_full = fdagger_to_f(fdag, cfg, K);

        MarginalEstimates est;
        est.values = std::vector<double>(f_full.begin(), f_full.begin() + n);
        est.scale_kind = ScaleKind::RawMarginals;
        for (int k = n + 1; k <= K; ++k) {
            const double want = f_full[k - 1];
            const double got = extend_f(est, cfg, k);
            CHECK(std::abs(got - want) < 1e-9 * std::abs(want));
        }
    }
}

TEST_CASE("log-scale input matches the linear-scale result up to scale") {
    ModelConfig cfg(30, 1.0);
    std::vector<double> f{0.3, 0.25, 0.2, 0.15, 0.1};
    MarginalEstimates lin;
    lin.values = f;
    lin.scale_kind = ScaleKind::RawMarginals;

    MarginalEstimates logs;
    logs.scale_kind = ScaleKind::LogMarginals;
    for (double v : f) logs.values.push_back(std::log(v) - 7.0);  // arbitrary shift

    const std::vector<double> a = f_to_fdagger(lin, cfg);
    const std::vector<double> b = f_to_fdagger(logs, cfg);
    // both are defined up to a common positive constant
    const double scale = a[0] / b[0];
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i] == doctest::Approx(b[i] * scale).epsilon(1e-10));
}

TEST_CASE("input validation") {
    ModelConfig cfg(5, 1.0);
    MarginalEstimates est;
    est.values = {0.2, 0.2, 0.2, 0.2, 0.1, 0.1};  // K = 6 > n = 5
    est.scale_kind = ScaleKind::PosteriorProbs;
    CHECK_THROWS_AS(f_to_fdagger(est, cfg), std::invalid_argument);

    ModelConfig percomp(10, std::vector<double>{1.0, 2.0, 1.0});
    est.values = {0.5, 0.5};
    CHECK_THROWS_AS(f_to_fdagger(est, percomp), std::invalid_argument);
    const ConstraintReport rep = check_constraints(est, percomp);
    CHECK_FALSE(rep.full_check_done);
    CHECK_FALSE(rep.notice.empty());
    CHECK(rep.pairwise_margins.size() == 2);

    est.values = {0.5, -0.1};
    CHECK_THROWS_AS(est.validate(), std::invalid_argument);

    CHECK_THROWS_AS(fdagger_to_f({0.1, -0.2}, cfg, 2), std::invalid_argument);
    CHECK_THROWS_AS(fdagger_to_f({0.0, 0.0}, cfg, 2), std::invalid_argument);

    MarginalEstimates ok;
    ok.values = {0.5, 0.5};
    ok.scale_kind = ScaleKind::RawMarginals;
    CHECK_THROWS_AS(extend_f(ok, cfg, 4), std::invalid_argument);  // k <= n
    CHECK_THROWS_AS(extend_f(ok, cfg, 6), std::invalid_argument);  // missing f_3..f_5
}
