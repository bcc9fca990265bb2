#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "cli/experiment_config.hpp"
#include "cli/validation.hpp"

namespace {

using qwalk::cli::ExperimentConfig;

// Flags explicitly given on the command line, overlaid on a config file.
struct Flags {
  std::string config_path;
  int n = 0;
  std::string delta;
  std::string target;
  double success_p = 0.0;
  std::string output;
  std::string format;
  int jobs = 0;
  int smooth = 0;
  int lapse = 0;
  bool unitary = false;
  int k_max = 0;
  std::string mode;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string correlations;
  std::vector<double> m_values;
  std::vector<int> exponents;
  std::vector<std::string> rules;
  double horizon_factor = 0.0;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file; flags override its keys");
  cmd->add_option("--n", f.n, "Position qubits (even); N = 2^n");
  cmd->add_option("--delta", f.delta, "Oracle angle: radians, 'pi/4', or 'tulsi'");
  cmd->add_option("--target", f.target, "Target position 'x,y'");
  cmd->add_option("--success-p", f.success_p, "Desired success probability P for TS");
  cmd->add_option("--output,-o", f.output, "Output file (default: stdout)");
  cmd->add_option("--format", f.format, "csv or json");
  cmd->add_option("--jobs,-j", f.jobs, "Worker threads for sweeps")->envname("QWALK_JOBS");
  cmd->add_option("--smooth", f.smooth, "Odd moving-average window");
}

void overlay(CLI::App* cmd, const Flags& f, ExperimentConfig& c) {
  auto given = [cmd](const char* name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--n")) c.n_qubits = f.n;
  if (given("--delta")) c.delta = qwalk::cli::parse_delta(f.delta);
  if (given("--target")) c.target = qwalk::cli::parse_position(f.target);
  if (given("--success-p")) c.success_target = f.success_p;
  if (given("--output")) c.output_path = f.output;
  if (given("--format")) c.format = qwalk::cli::parse_format(f.format);
  if (given("--jobs")) c.jobs = f.jobs;
  if (given("--smooth")) c.smoothing_window = f.smooth;
  if (given("--lapse")) c.lapse = f.lapse;
  if (given("--unitary")) c.unitary = f.unitary;
  if (given("--kmax")) c.k_max = f.k_max;
  if (given("--mode")) {
    if (f.mode == "deterministic") {
      c.mode = qwalk::RunMode::Deterministic;
    } else if (f.mode == "monte_carlo") {
      c.mode = qwalk::RunMode::MonteCarlo;
    } else {
      throw qwalk::cli::ConfigError("--mode must be deterministic or monte_carlo");
    }
  }
  if (given("--trials")) c.trials = f.trials;
  if (given("--seed")) c.seed = f.seed;
  if (given("--correlations")) c.correlations = qwalk::cli::parse_correlations(f.correlations);
  if (given("--m")) c.m_values = f.m_values;
  if (given("--exponents")) c.exponents = f.exponents;
  if (given("--rules")) c.lapse_rules = f.rules;
  if (given("--horizon-factor")) c.horizon_factor = f.horizon_factor;
}

std::vector<ExperimentConfig> resolve(CLI::App* cmd, const Flags& f) {
  std::vector<ExperimentConfig> configs =
      f.config_path.empty() ? std::vector<ExperimentConfig>{ExperimentConfig{}}
                            : qwalk::cli::load_config_series(f.config_path);
  for (auto& c : configs) overlay(cmd, f, c);
  if (configs.size() > 1) {
    for (std::size_t i = 0; i < configs.size(); ++i) {
      if (configs[i].output_path.empty()) {
        throw qwalk::cli::ConfigError("series entries need an output path each");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (configs[j].output_path == configs[i].output_path) {
          throw qwalk::cli::ConfigError("series entries share the output path '" + configs[i].output_path + "'");
        }
      }
    }
  }
  return configs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controlled quantum-walk search with intermediate control measurements"};
  app.require_subcommand(1);
  Flags flags;

  auto* run = app.add_subcommand("run", "Evolve one configuration and emit its per-step trace");
  add_common(run, flags);
  run->add_option("--lapse", flags.lapse, "Steps between control measurements");
  run->add_flag("--unitary", flags.unitary, "No intermediate measurements");
  run->add_option("--kmax", flags.k_max, "Total steps (default (pi/4) sqrt(N log2 N))");
  run->add_option("--mode", flags.mode, "deterministic or monte_carlo");
  run->add_option("--trials", flags.trials, "Monte Carlo trials");
  run->add_option("--seed", flags.seed, "Monte Carlo seed");
  run->add_option("--correlations", flags.correlations, "'all' or comma-separated kinds");

  auto* lapse = app.add_subcommand("sweep-lapse", "Total steps as a function of l = sqrt(N)/m");
  add_common(lapse, flags);
  lapse->add_option("--m", flags.m_values, "Ratios m = sqrt(N)/l")->delimiter(',');
  lapse->add_option("--horizon-factor", flags.horizon_factor, "Trace length for the optimal-k search, in k_max units");

  auto* order = app.add_subcommand("sweep-order", "Total steps as a function of N per lapse rule");
  add_common(order, flags);
  order->add_option("--exponents", flags.exponents, "Even exponents n (N = 2^n)")->delimiter(',');
  order->add_option("--rules", flags.rules, "unitary, <int>, sqrtN, sqrtN/<m>, <c>sqrtN")->delimiter(',');
  order->add_option("--horizon-factor", flags.horizon_factor, "Trace length for the optimal-k search, in k_max units");

  auto* validate = app.add_subcommand("validate", "Run the built-in consistency checks at N <= 64");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? qwalk::cli::kExitOk : qwalk::cli::kExitBadConfig;
  }

  try {
    if (validate->parsed()) {
      const auto results = qwalk::cli::run_validation();
      qwalk::cli::print_report(std::cout, results);
      return qwalk::cli::all_passed(results) ? qwalk::cli::kExitOk : qwalk::cli::kExitValidationFailed;
    }
    CLI::App* cmd = run->parsed() ? run : lapse->parsed() ? lapse : order;
    const std::vector<ExperimentConfig> configs = resolve(cmd, flags);
    for (const auto& config : configs) {
      std::string content;
      if (cmd == run) {
        content = qwalk::cli::run_experiment(config);
      } else if (cmd == lapse) {
        content = qwalk::cli::run_sweep_lapse(config);
      } else {
        content = qwalk::cli::run_sweep_order(config);
      }
      qwalk::cli::emit(content, config.output_path, std::cout);
    }
  } catch (const qwalk::cli::ConfigError& e) {
    std::cerr << "qwalk: " << e.what() << '\n';
    return qwalk::cli::kExitBadConfig;
  } catch (const qwalk::cli::IoError& e) {
    std::cerr << "qwalk: " << e.what() << '\n';
    return qwalk::cli::kExitIoError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qwalk: " << e.what() << '\n';
    return qwalk::cli::kExitBadConfig;
  }
  return qwalk::cli::kExitOk;
}
