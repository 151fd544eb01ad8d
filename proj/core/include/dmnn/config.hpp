#pragma once

#include <string>

#include "dmnn/experiment.hpp"

namespace dmnn {

// Parses an experiment config from its JSON text. Every key is optional and
// falls back to the defaults in ExperimentConfig; unknown keys raise
// ConfigError so typos cannot silently change an experiment. SNR values
// accept the string "inf" for noiseless generation. The key set is
// documented in the README.
ExperimentConfig parse_experiment_config(const std::string& json_text);

// File variant; throws IoError when the file cannot be read.
ExperimentConfig load_experiment_config(const std::string& path);

}  // namespace dmnn
