#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lislim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key = value experiment configuration; lists are comma-separated,
// '#' starts a comment.
struct ExperimentConfig {
    std::vector<double> distribution;
    std::vector<int> n_grid;
    long samples = 100000;          // N per cell, >= 1000
    int T = 4096;                   // Brownian grid steps
    std::uint64_t seed = 20090114;  // master seed
    std::string reference = "auto"; // auto | closed-form | quadrature | monte-carlo
    double xi = 1.0;                // paper-unspecified absolute constants
    double c = 1.0;
    std::string output;
    int workers = 0;                // 0: LISLIM_WORKERS env or hardware
    // growing-m schedule
    std::vector<int> m_grid;        // explicit m per n, else ceil(n^m_exponent)
    double m_exponent = 0.125;
    int k_target = 1;
    long mc_reference_samples = 200000;
    std::string dump_samples;       // optional sample dump path (monte-carlo reference)
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);
void validate_config(const ExperimentConfig& cfg);

}  // namespace lislim
