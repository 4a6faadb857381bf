#include <string>

#include <doctest.h>

#include "mixaudit/estimate_file.hpp"

using namespace mixaudit;

namespace {

const char* kGalaxyJson = R"({
  "n": 82,
  "alpha": 1.0,
  "k_prior": { "type": "uniform", "k_max": 30 },
  "estimates": {
    "kind": "posterior_probs",
    "values": [0.000, 0.000, 0.061, 0.128, 0.182, 0.199, 0.160, 0.109,
               0.071, 0.040, 0.023, 0.013, 0.006, 0.003, 0.002],
    "residual_tail_mass": 0.003
  },
  "covariance": { "kind": "multinomial", "mcmc_draws": 20000 }
})";

}  // namespace

TEST_CASE("galaxy-style input parses completely") {
    const EstimateFile f = parse_estimate_json(kGalaxyJson);
    CHECK(f.config.n == 82);
    CHECK(f.config.symmetric());
    CHECK(f.config.symmetric_alpha() == 1.0);
    CHECK(f.config.k_prior.kind == KPrior::Kind::Uniform);
    CHECK(f.config.k_prior.k_max == 30);
    CHECK(f.estimates.K() == 15);
    CHECK(f.estimates.scale_kind == ScaleKind::PosteriorProbs);
    REQUIRE(f.estimates.residual_tail_mass.has_value());
    CHECK(*f.estimates.residual_tail_mass == 0.003);
    REQUIRE(f.covariance.has_value());
    CHECK(f.covariance->kind == CovarianceSpec::Kind::Multinomial);
    CHECK(f.covariance->mcmc_draws == 20000);
}

TEST_CASE("defaults and variants") {
    // estimates.kind defaults to posterior_probs; covariance is optional
    const EstimateFile a = parse_estimate_json(
        R"({"n": 5, "alpha": 0.5, "k_prior": {"type": "uniform", "k_max": 4},
            "estimates": {"values": [0.5, 0.3, 0.2]}})");
    CHECK(a.estimates.scale_kind == ScaleKind::PosteriorProbs);
    CHECK_FALSE(a.covariance.has_value());
    CHECK_FALSE(a.estimates.residual_tail_mass.has_value());

    // per-component alpha array
    const EstimateFile b = parse_estimate_json(
        R"({"n": 5, "alpha": [0.5, 1.0, 1.5], "k_prior": {"type": "uniform", "k_max": 3},
            "estimates": {"kind": "raw_marginals", "values": [1.0, 2.0, 3.0]}})");
    CHECK_FALSE(b.config.symmetric());
    CHECK(b.config.alpha_of(3) == 1.5);
    CHECK(b.estimates.scale_kind == ScaleKind::RawMarginals);

    // weights prior with a tail rule
    const EstimateFile c = parse_estimate_json(
        R"({"n": 5, "alpha": 1.0,
            "k_prior": {"type": "weights", "values": [2.0, 1.0], "tail": "geometric"},
            "estimates": {"kind": "log_marginals", "values": [-3.0, -4.0]}})");
    CHECK(c.config.k_prior.kind == KPrior::Kind::Weights);
    CHECK(c.config.k_prior.tail == KPrior::Tail::Geometric);
    CHECK(c.config.k_prior.weight(3) == doctest::Approx(0.5));
    CHECK(c.estimates.scale_kind == ScaleKind::LogMarginals);

    // top-level mcmc_draws is shorthand for a multinomial covariance
    const EstimateFile d = parse_estimate_json(
        R"({"n": 5, "alpha": 1.0, "k_prior": {"type": "uniform", "k_max": 4},
            "estimates": {"values": [0.6, 0.4]}, "mcmc_draws": 5000})");
    REQUIRE(d.covariance.has_value());
    CHECK(d.covariance->kind == CovarianceSpec::Kind::Multinomial);
    CHECK(d.covariance->mcmc_draws == 5000);

    // explicit covariance specifications
    const EstimateFile e = parse_estimate_json(
        R"({"n": 5, "alpha": 1.0, "k_prior": {"type": "uniform", "k_max": 4},
            "estimates": {"values": [0.6, 0.4]},
            "covariance": {"kind": "diagonal", "variances": [1e-4, 2e-4]}})");
    CHECK(e.covariance->kind == CovarianceSpec::Kind::Diagonal);

    const EstimateFile g = parse_estimate_json(
        R"({"n": 5, "alpha": 1.0, "k_prior": {"type": "uniform", "k_max": 4},
            "estimates": {"values": [0.6, 0.4]},
            "covariance": {"kind": "full", "matrix": [[1e-4, 1e-5], [1e-5, 2e-4]]}})");
    CHECK(g.covariance->kind == CovarianceSpec::Kind::Full);
    CHECK(g.covariance->full(0, 1) == 1e-5);
}

TEST_CASE("malformed input is rejected with the offending field named") {
    auto reject = [](const std::string& text, const std::string& needle) {
        try {
            parse_estimate_json(text);
            FAIL_CHECK("expected ParseError for: " << text);
        } catch (const ParseError& e) {
            CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos,
                          "message '", e.what(), "' lacks '", needle, "'");
        }
    };

    reject("{not json", "invalid JSON");
    reject("[1,2]", "top level");
    reject(R"({"alpha": 1.0, "k_prior": {"type": "uniform", "k_max": 4},
               "estimates": {"values": [0.5]}})",
           "n");
    reject(R"({"n": 0, "alpha": 1.0, "k_prior": {"type": "uniform", "k_max": 4},
               "estimates": {"values": [0.5]}})",
           "n");
    reject(R"({"n": 5, "alpha": -1.0, "k_prior": {"type": "uniform", "k_max": 4},
               "estimates": {"values": [0.5]}})",
           "alpha");
    reject(R"({"n": 5, "alpha": 1.0, "estimates": {"values": [0.5]}})", "k_prior");
    reject(R"({"n": 5, "alpha": 1.0, "k_prior": {"type": "poisson"},
               "estimates": {"values": [0.5]}})",
           "k_prior.type");
    reject(R"({"n": 5, "alpha": 1.0, "k_prior": {"type": "uniform"},
               "estimates": {"values": [0.5]}})",
           "k_max");
    reject(R"({"n": 5, "alpha": 1.0, "k_prior": {"type": "weights", "values": []},
               "estimates": {"values": [0.5]}})",
           "k_prior.values");
    reject(R"({"n": 5, "alpha": 1.0, "k_prior": {"type": "weights", "values": [1.0],
               "tail": "linear"}, "estimates": {"values": [0.5]}})",
           "k_prior.tail");
    reject(R"({"n": 5, "alpha": 1.0, "k_prior": {"type": "uniform", "k_max": 4}})",
           "estimates");
    reject(R"({"n": 5, "alpha": 1.0, "k_prior": {"type": "uniform", "k_max": 4},
               "estimates": {"values": []}})",
           "estimates.values");
    reject(R"({"n": 5, "alpha": 1.0, "k_prior": {"type": "uniform", "k_max": 4},
               "estimates": {"values": [0.5, -0.1]}})",
           "negative");
    reject(R"({"n": 5, "alpha": 1.0, "k_prior": {"type": "uniform", "k_max": 4},
               "estimates": {"kind": "percentages", "values": [0.5]}})",
           "estimates.kind");
    reject(R"({"n": 5, "alpha": 1.0, "k_prior": {"type": "uniform", "k_max": 4},
               "estimates": {"values": [0.5], "residual_tail_mass": -0.1}})",
           "residual_tail_mass");
    reject(R"({"n": 5, "alpha": 1.0, "k_prior": {"type": "uniform", "k_max": 4},
               "estimates": {"values": [0.6, 0.4]},
               "covariance": {"kind": "diagonal", "variances": [1e-4]}})",
           "covariance.variances");
    reject(R"({"n": 5, "alpha": 1.0, "k_prior": {"type": "uniform", "k_max": 4},
               "estimates": {"values": [0.6, 0.4]},
               "covariance": {"kind": "full", "matrix": [[1e-4]]}})",
           "covariance.matrix");
    reject(R"({"n": 5, "alpha": 1.0, "k_prior": {"type": "uniform", "k_max": 4},
               "estimates": {"values": [0.6, 0.4]},
               "covariance": {"kind": "banded"}})",
           "covariance");
    reject(R"({"n": 5, "alpha": "one", "k_prior": {"type": "uniform", "k_max": 4},
               "estimates": {"values": [0.5]}})",
           "schema error");

    CHECK_THROWS_AS(parse_estimate_file("/nonexistent/input.json"), ParseError);
}
