#pragma once

#include <ostream>
#include <string>

#include "experiment_config.hpp"

namespace qwalk::cli {

// Exponents used for the f(alpha) columns of sweep output.
inline constexpr double kFitAlphas[] = {0.6, 0.9, 1.25, 1.5};

// Rendering is separate from I/O so outputs can be compared byte for byte.
std::string render_trace(const RunTrace& trace, const ExperimentConfig& config);
std::string render_monte_carlo(const MonteCarloResult& mc, double deterministic_p_cumulative,
                               const ExperimentConfig& config);
std::string render_sweep(const SweepResult& sweep, const ExperimentConfig& config,
                         const std::string& kind);

// Each returns the rendered document. Bad configurations raise ConfigError.
std::string run_experiment(const ExperimentConfig& config);
std::string run_sweep_lapse(const ExperimentConfig& config);
std::string run_sweep_order(const ExperimentConfig& config);

// Writes to config.output_path, or to `fallback` when the path is empty.
// Throws IoError when the file cannot be written.
void emit(const std::string& content, const std::string& path, std::ostream& fallback);

}  // namespace qwalk::cli
