#pragma once

// Configuration-driven experiment runner.  A config is a JSON document
// (versioned schema) holding a list of experiments; each experiment binds
// a weight, a multiplier sequence, and parameters, and emits CSV tables
// plus a machine-readable summary.  Outputs are deterministic for a fixed
// config and seed: headers embed the config hash, the software version,
// and the frozen-constants hash, never timestamps.

#include <cstdint>
#include <string>
#include <vector>

#include "zerolab/constants.hpp"

namespace zerolab {

inline constexpr const char* kVersionString = "zerolab 0.1.0";

struct RunResult {
    int experiments_run = 0;
    std::vector<std::string> outputs;   // paths written
    std::string summary_json;           // also written to <out>/summary.json
};

// Full static validation; returns a list of "field: problem" strings.
std::vector<std::string> validate_config(const std::string& config_json);

// Validates, then runs every experiment.  `out_dir` is created if needed.
// Throws validation_error / capacity_error / numeric_error.
RunResult run_config(const std::string& config_json, const std::string& out_dir,
                     const FrozenConstants& constants, int threads = 1);

std::uint64_t fnv1a(const std::string& s);

}  // namespace zerolab
