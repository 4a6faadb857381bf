#pragma once

#include <optional>
#include <string>

#include "mixaudit/correction.hpp"
#include "mixaudit/model_config.hpp"
#include "mixaudit/transforms.hpp"

namespace mixaudit {

// One self-contained analysis input: model configuration, the estimates to
// audit and (optionally) their sampling covariance.
struct EstimateFile {
    ModelConfig config;
    MarginalEstimates estimates;
    std::optional<CovarianceSpec> covariance;
};

// Thrown for malformed or inconsistent input files; the CLI maps it to exit
// code 2 with the field name in the message.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

EstimateFile parse_estimate_file(const std::string& path);
EstimateFile parse_estimate_json(const std::string& text);

}  // namespace mixaudit
