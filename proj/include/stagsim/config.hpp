// Strict JSON experiment configuration: unknown keys are errors so a config
// file always means what it says.
#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "stagsim/dynamics.hpp"
#include "stagsim/interventions.hpp"
#include "stagsim/population.hpp"
#include "stagsim/shocks.hpp"

namespace stagsim {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    PopulationParams population;
    ModelParams model;
    int n_configs = 25;
    std::uint64_t base_seed = 42;
    std::vector<ShockSpec> shocks;               // defaults to all four kinds
    std::vector<InterventionSpec> interventions; // defaults to vanilla + stable
    int h2_shock_replications = 5;
    std::string output_dir = "out";

    // Runtime knobs set from the command line, not the file.
    int threads = 1;
    OutputFormat format = OutputFormat::Csv;

    void validate() const; // throws ConfigError
};

ExperimentConfig default_config();

// Throws ConfigError on syntax errors, unknown keys or invalid values.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::filesystem::path& path);

std::string config_to_json(const ExperimentConfig& config);

} // namespace stagsim
