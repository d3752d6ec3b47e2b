#pragma once

#include <string>

#include "crbridge/eval.hpp"
#include "crbridge/training.hpp"

namespace crbridge {

struct RunConfig {
    TrainConfig train;
    EvalConfig eval;
};

// Parses the JSON run configuration. Unknown keys anywhere in the document
// are rejected, listing the offending paths.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace crbridge
