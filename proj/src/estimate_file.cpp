#include "mixaudit/estimate_file.hpp"

#include <fstream>

#include <json.hpp>

namespace mixaudit {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw ParseError("field '" + field + "': " + why);
}

KPrior parse_k_prior(const json& j) {
    if (!j.is_object() || !j.contains("type")) fail("k_prior", "expected object with 'type'");
    const std::string type = j.at("type").get<std::string>();
    if (type == "uniform") {
        if (!j.contains("k_max")) fail("k_prior.k_max", "required for uniform prior");
        const int k_max = j.at("k_max").get<int>();
        if (k_max < 1) fail("k_prior.k_max", "must be >= 1");
        return KPrior::uniform(k_max);
    }
    if (type == "weights") {
        if (!j.contains("values")) fail("k_prior.values", "required for weights prior");
        std::vector<double> w = j.at("values").get<std::vector<double>>();
        if (w.empty()) fail("k_prior.values", "must be nonempty");
        KPrior::Tail tail = KPrior::Tail::None;
        if (j.contains("tail")) {
            const std::string t = j.at("tail").get<std::string>();
            if (t == "none") tail = KPrior::Tail::None;
            else if (t == "geometric") tail = KPrior::Tail::Geometric;
            else if (t == "constant") tail = KPrior::Tail::Constant;
            else fail("k_prior.tail", "must be one of none|geometric|constant");
        }
        try {
            return KPrior::from_weights(std::move(w), tail);
        } catch (const std::invalid_argument& e) {
            fail("k_prior.values", e.what());
        }
    }
    fail("k_prior.type", "must be 'uniform' or 'weights'");
}

ScaleKind parse_scale_kind(const std::string& s) {
    if (s == "posterior_probs") return ScaleKind::PosteriorProbs;
    if (s == "raw_marginals") return ScaleKind::RawMarginals;
    if (s == "log_marginals") return ScaleKind::LogMarginals;
    fail("estimates.kind", "must be posterior_probs|raw_marginals|log_marginals");
}

CovarianceSpec parse_covariance(const json& j, int K) {
    if (!j.is_object() || !j.contains("kind")) fail("covariance", "expected object with 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "multinomial") {
            if (!j.contains("mcmc_draws")) fail("covariance.mcmc_draws", "required");
            return CovarianceSpec::multinomial(j.at("mcmc_draws").get<std::int64_t>());
        }
        if (kind == "diagonal") {
            std::vector<double> v = j.at("variances").get<std::vector<double>>();
            if (static_cast<int>(v.size()) != K)
                fail("covariance.variances", "length must match estimates.values");
            return CovarianceSpec::diagonal(std::move(v));
        }
        if (kind == "full") {
            const auto rows = j.at("matrix").get<std::vector<std::vector<double>>>();
            if (static_cast<int>(rows.size()) != K)
                fail("covariance.matrix", "size must match estimates.values");
            Eigen::MatrixXd m(K, K);
            for (int i = 0; i < K; ++i) {
                if (static_cast<int>(rows[i].size()) != K)
                    fail("covariance.matrix", "matrix must be square");
                for (int c = 0; c < K; ++c) m(i, c) = rows[i][c];
            }
            return CovarianceSpec::full_matrix(std::move(m));
        }
    } catch (const std::invalid_argument& e) {
        fail("covariance", e.what());
    }
    fail("covariance.kind", "must be diagonal|full|multinomial");
}

}  // namespace

EstimateFile parse_estimate_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("top level must be an object");

    EstimateFile out;
    try {
        if (!j.contains("n")) fail("n", "required");
        out.config.n = j.at("n").get<int>();
        if (out.config.n < 1) fail("n", "must be >= 1");

        if (!j.contains("alpha")) fail("alpha", "required");
        if (j.at("alpha").is_number())
            out.config.alpha = {j.at("alpha").get<double>()};
        else
            out.config.alpha = j.at("alpha").get<std::vector<double>>();
        for (double a : out.config.alpha)
            if (!(a > 0)) fail("alpha", "entries must be positive");

        if (!j.contains("k_prior")) fail("k_prior", "required");
        out.config.k_prior = parse_k_prior(j.at("k_prior"));

        if (!j.contains("estimates")) fail("estimates", "required");
        const json& je = j.at("estimates");
        if (!je.contains("values")) fail("estimates.values", "required");
        out.estimates.values = je.at("values").get<std::vector<double>>();
        if (out.estimates.values.empty()) fail("estimates.values", "must be nonempty");
        out.estimates.scale_kind =
            parse_scale_kind(je.value("kind", std::string("posterior_probs")));
        if (je.contains("residual_tail_mass")) {
            const double m = je.at("residual_tail_mass").get<double>();
            if (m < 0) fail("estimates.residual_tail_mass", "must be nonnegative");
            out.estimates.residual_tail_mass = m;
        }
        out.estimates.validate();

        if (j.contains("covariance"))
            out.covariance = parse_covariance(j.at("covariance"), out.estimates.K());
        else if (j.contains("mcmc_draws"))
            out.covariance = CovarianceSpec::multinomial(j.at("mcmc_draws").get<std::int64_t>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("schema error: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return out;
}

EstimateFile parse_estimate_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_estimate_json(text);
}

}  // namespace mixaudit
