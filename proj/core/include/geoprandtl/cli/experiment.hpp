#pragma once

#include <filesystem>
#include <string>

#include "geoprandtl/cli/config.hpp"

namespace geoprandtl::cli {

struct ExperimentResult {
    /// 0 on success; ErrorKind value otherwise.
    int exit_code = 0;
    std::string message;
    std::vector<std::filesystem::path> artifacts;
};

/// Runs the scenario and writes its artifacts under cfg.output:
///   wellposed2d   diagnostics.csv, summary.txt
///   blowup1d      diagnostics.csv, comparison.csv, summary.txt
///   weight_verify constraints.csv, weight_profile.csv, summary.txt
///   weight_search feasible.csv, summary.txt
///   convergence2d convergence.csv, summary.txt
/// Errors are caught and mapped to exit codes (1 config, 2 numerical, 3 infeasible weight, 4 I/O).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// parse_config followed by run_experiment, with parse errors mapped the same way.
ExperimentResult run_config_file(const std::filesystem::path& path, std::optional<Scenario> implied = std::nullopt);

}  // namespace geoprandtl::cli
