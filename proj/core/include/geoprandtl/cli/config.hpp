#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "geoprandtl/lyapunov/weight.hpp"

namespace geoprandtl::cli {

enum class Scenario { wellposed2d, blowup1d, weight_verify, weight_search, convergence2d };
std::string to_string(Scenario s);
/// Throws ConfigError on an unknown name.
Scenario parse_scenario(const std::string& name);

enum class DataPreset { zero, bump, analytic_bump, odd_analytic_bump, random_analytic };
std::string to_string(DataPreset p);

enum class OutflowShape { zero, cosine, sine };
std::string to_string(OutflowShape s);

/// Flat `key = value` text with `[section]` headers and `#` comments.
/// Defaults depend on the scenario where noted.
struct ExperimentConfig {
    Scenario scenario = Scenario::blowup1d;
    std::filesystem::path output = "out";
    std::uint64_t seed = 1;

    // [grid]
    double L = 1.0;
    int nx = 32;
    double ymax = 40.0;
    int ny = 800;

    // [scheme]
    double dt0 = 1e-3;
    /// 0.25 for the 2-D scenarios, 1 for blowup1d.
    double T = 0.0;
    double cfl = 0.5;
    double dt_min = 1e-6;
    double blowup_threshold = 1e6;
    int cadence = 1;
    int n_reg = 0;

    // [analyticity]
    double lambda = 1.0;
    double delta = 1.0;
    double gamma_time = 2.0;

    // [outflow]: 2-D U(t, x) = amplitude * e^{-decay t} * shape(x); blowup1d uses
    // U~(t) = amplitude * e^{-decay t} directly.
    OutflowShape outflow = OutflowShape::zero;
    double outflow_amplitude = 0.0;
    double outflow_decay = 0.0;

    // [data]
    /// bump for blowup1d, analytic_bump for the 2-D scenarios.
    DataPreset data = DataPreset::bump;
    /// 20 for blowup1d, 1e-3 for the 2-D scenarios.
    double data_amplitude = 0.0;
    double data_radius = 1.5;
    double data_width = 2.0;

    // [rho]
    lyapunov::RhoParams rho = lyapunov::RhoParams::reference();
    int rho_samples = 10000;

    // [search]
    lyapunov::SearchRanges search{};
    long search_budget = 20000;
    int search_samples = 2000;

    // [convergence]
    std::vector<int> n_list = {2, 4, 8, 16};

    /// Throws ConfigError naming the violated constraint.
    void validate() const;
};

/// Parses and validates. `implied` is the scenario fixed by the subcommand; a
/// conflicting `scenario` key is an error. Throws ConfigError (unknown key,
/// malformed line or value, range violation, missing scenario) and IoError
/// when the file cannot be read.
ExperimentConfig parse_config(const std::filesystem::path& path, std::optional<Scenario> implied = std::nullopt);
ExperimentConfig parse_config_text(const std::string& text, std::optional<Scenario> implied = std::nullopt);

}  // namespace geoprandtl::cli
