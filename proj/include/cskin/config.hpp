#ifndef CSKIN_CONFIG_HPP
#define CSKIN_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "cskin/effective_model.hpp"
#include "cskin/waveguide_qed.hpp"

namespace cskin {

enum class Experiment {
    Fig2,
    Fig3,
    Fig4,
    FigS1,
    FigS2,
    FigS3,
    FigS4Potential,
    FigS5State,
    FigS6,
    FigS7S8,
    VerifyAnalytics,
    Custom,
};

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& s); // throws ConfigError

struct NumericsParams {
    int r_max = 200;
    int k_points = 400;
    int grid_size = 0;       // 0 -> 4 N
    double peak_threshold = 0.5;
    double eig_tol = 1e-10;
    int quadrature_points = 0; // 0 -> max(4096, 64 N)
    int q_samples = 2001;      // continuum sampling
};

enum class OutputFormat { Csv, Json };

struct OutputParams {
    std::string dir = ".";
    bool dir_set = false; // whether the config file named a directory
    OutputFormat format = OutputFormat::Csv;
};

struct ExperimentConfig {
    Experiment experiment = Experiment::Fig2;
    ModelParams model;
    EffectiveParams effective;
    NumericsParams numerics;
    OutputParams output;
    int threads = 1;
    unsigned seed = 12345;

    int resolved_grid_size() const;
    int resolved_quadrature_points() const;
    // Full resolved configuration, sorted by key; written into every output
    // file as the provenance record.
    std::map<std::string, std::string> resolved() const;
};

// Parses "1.5", "0.35pi", "pi", "-pi" and friends.
double parse_real(const std::string& text, const std::string& key);

// Parse and range-check a config file. Unknown keys and malformed values
// throw ConfigError naming the offending key.
ExperimentConfig load_config(const std::string& path);

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const { return errors.empty(); }
    std::string str() const;
};

// Schema plus physics-range validation without running the experiment.
ValidationReport validate_config_file(const std::string& path);

} // namespace cskin

#endif
