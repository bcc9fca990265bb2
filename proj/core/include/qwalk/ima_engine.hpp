#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qwalk/correlations.hpp"
#include "qwalk/grid_state.hpp"
#include "qwalk/walk_operators.hpp"

namespace qwalk {

enum class RunMode { Deterministic, MonteCarlo };

struct IMAConfig {
  explicit IMAConfig(GridGeometry g) : geometry(g) {}

  GridGeometry geometry;
  double delta = 0.0;
  Position target{};
  int lapse = 1;
  int k_max = 1;
  double success_target = 0.5;
  RunMode mode = RunMode::Deterministic;
  int trials = 1;
  std::uint64_t seed = 0;
  // Evaluated on every recorded step.
  std::vector<CorrelationKind> correlations;

  OracleSpec oracle() const { return OracleSpec{delta, target}; }
};

// Throws std::invalid_argument on an inconsistent configuration.
void validate(const IMAConfig& config);

struct TraceRow {
  int k = 0;
  // Target probability of the (measurement-conditioned) state at step k.
  double p_target = 0.0;
  bool measured = false;
  // Probability of control outcome 0; NaN when no measurement at k.
  double p_zero = 0.0;
  // Probability of the control being |1> before any collapse at k.
  double p_control_one = 1.0;
  // Probability that every measurement so far returned 1.
  double survival = 1.0;
  // Probability of having stopped on an outcome 0 up to k.
  double p_stopped = 0.0;
  // p_stopped + survival * p_target.
  double p_cumulative = 0.0;
  std::vector<double> correlations;
};

struct RunTrace {
  std::vector<CorrelationKind> kinds;
  std::vector<TraceRow> rows;
  // Set when a collapse onto outcome 1 had vanishing probability.
  bool terminated_early = false;

  std::vector<double> p_target_series() const;
  std::vector<double> p_cumulative_series() const;
  // Throws std::out_of_range if the kind was not recorded.
  std::vector<double> correlation_series(CorrelationKind kind) const;
  const TraceRow& at_step(int k) const;
};

// Requested outcome has probability below 1e-12.
class DegenerateCollapse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Called with the state after every recorded step (after collapse on
// measurement steps), including k = 0.
using StepObserver = std::function<void(int k, const WalkState& state, bool measured)>;

// Tulsi angle arccos(1/sqrt(log2 N)).
double tulsi_delta(const GridGeometry& geometry);

// round((pi/4) sqrt(N (log2 N + tan^2(delta)/4))).
int t_delta(const GridGeometry& geometry, double delta);

// round((pi/4) sqrt(N log2 N)).
int default_kmax(const GridGeometry& geometry);

double control_zero_probability(const WalkState& state);

// Projects the control onto `outcome` and renormalizes. Returns the
// pre-collapse probability of that outcome.
double collapse_control(WalkState& state, int outcome);

RunTrace run_unitary(const IMAConfig& config, const StepObserver& observer = {});

// Follows the single surviving branch (all outcomes 1) and accumulates the
// stop-on-0 probability exactly.
RunTrace run_ima_deterministic(const IMAConfig& config, const StepObserver& observer = {});

struct MonteCarloResult {
  double success_frequency = 0.0;
  double standard_error = 0.0;
  int trials = 0;
  int successes = 0;
};

// Samples `trials` independent experiments; trial i draws from a generator
// seeded with seed + i.
MonteCarloResult run_ima_monte_carlo(const IMAConfig& config);

}  // namespace qwalk
