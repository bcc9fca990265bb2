#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "qwalk/analysis.hpp"
#include "qwalk/correlations.hpp"
#include "qwalk/ima_engine.hpp"

namespace qwalk::cli {

// Exit codes of the qwalk tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailed = 1;
inline constexpr int kExitBadConfig = 2;
inline constexpr int kExitIoError = 3;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
  int n_qubits = 8;
  DeltaChoice delta{false, 0.7853981633974483};  // pi/4
  Position target{};
  bool unitary = false;
  int lapse = 1;
  std::optional<int> k_max;  // defaults to round((pi/4) sqrt(N log2 N))
  double success_target = 0.5;
  RunMode mode = RunMode::Deterministic;
  int trials = 10000;
  std::uint64_t seed = 0;
  std::vector<CorrelationKind> correlations;
  std::optional<int> smoothing_window;
  std::string output_path;  // empty: standard output
  OutputFormat format = OutputFormat::Csv;

  // Sweep axes.
  std::vector<int> exponents{8, 10, 12, 14};
  std::vector<std::string> lapse_rules{"unitary", "1", "sqrtN", "sqrtN/2", "sqrtN/4", "sqrtN/8"};
  std::vector<double> m_values{1, 2, 4, 8, 16};
  double horizon_factor = 2.0;
  int jobs = 1;

  IMAConfig to_ima_config() const;
  SweepOptions sweep_options() const;
  std::vector<LapseRule> parsed_lapse_rules() const;
};

// "tulsi", "pi/4", "0" or a value in radians.
DeltaChoice parse_delta(const std::string& text);
// "all" or a comma-separated list of tags.
std::vector<CorrelationKind> parse_correlations(const std::string& text);
OutputFormat parse_format(const std::string& text);
Position parse_position(const std::string& text);

// Overlays keys from a JSON object onto `config`. Unknown keys and bad
// values raise ConfigError.
void apply_json(ExperimentConfig& config, const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);

// A file may hold a "series" array; each entry overlays the top-level keys
// and yields one configuration. Without it the result has one element.
std::vector<ExperimentConfig> load_config_series(const std::string& path);

nlohmann::json to_json(const ExperimentConfig& config);

// Throws ConfigError when the configuration cannot be run.
void check(const ExperimentConfig& config);

}  // namespace qwalk::cli
