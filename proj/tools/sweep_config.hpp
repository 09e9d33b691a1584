// JSON form of the sweep configuration used by the command line tool.
#pragma once

#include <string>

#include "pas4d/sweep.hpp"

namespace pas4d::cli {

// Parses a config document. Throws std::invalid_argument with a usable
// message on malformed input.
ExperimentConfig parse_experiment_config(const std::string& json_text);

// Normalized serialization; parse(serialize(cfg)) reproduces cfg exactly.
std::string serialize_experiment_config(const ExperimentConfig& config);

}  // namespace pas4d::cli
