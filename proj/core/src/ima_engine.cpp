#include "qwalk/ima_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

namespace qwalk {

namespace {

constexpr double kCollapseTolerance = 1e-12;

TraceRow make_row(int k, const WalkState& state, const IMAConfig& config, double p_stopped,
                  double survival) {
  TraceRow row;
  row.k = k;
  row.p_target = target_probability(state, config.target);
  row.p_zero = std::numeric_limits<double>::quiet_NaN();
  row.p_control_one = 1.0 - control_zero_probability(state);
  row.survival = survival;
  row.p_stopped = p_stopped;
  row.p_cumulative = p_stopped + survival * row.p_target;
  row.correlations = evaluate_correlations(state, config.correlations);
  return row;
}

// Measurement schedule shared by the deterministic and sampling engines:
// state evolution of the all-ones branch, reporting each measured P0.
template <typename OnMeasure, typename OnStep>
bool evolve_branch(const IMAConfig& config, WalkState& state, OnMeasure&& on_measure,
                   OnStep&& on_step) {
  const OracleSpec oracle = config.oracle();
  for (int k = 1; k <= config.k_max; ++k) {
    step(state, oracle);
    const bool measured = k % config.lapse == 0;
    if (measured) {
      const double p0 = control_zero_probability(state);
      const double p1 = 1.0 - p0;
      if (p1 < kCollapseTolerance) {
        on_measure(k, p0, state, false);
        return false;
      }
      on_measure(k, p0, state, true);
      collapse_control(state, 1);
    }
    on_step(k, state, measured);
  }
  return true;
}

}  // namespace

void validate(const IMAConfig& config) {
  validate_oracle(config.geometry, config.oracle());
  if (config.lapse < 1) throw std::invalid_argument("lapse must be >= 1");
  if (config.k_max < 0) throw std::invalid_argument("k_max must be >= 0");
  if (!(config.success_target > 0.0 && config.success_target < 1.0)) {
    throw std::invalid_argument("success target must lie in (0, 1)");
  }
  if (config.mode == RunMode::MonteCarlo && config.trials < 1) {
    throw std::invalid_argument("Monte Carlo mode needs trials >= 1");
  }
}

std::vector<double> RunTrace::p_target_series() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.p_target);
  return out;
}

std::vector<double> RunTrace::p_cumulative_series() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.p_cumulative);
  return out;
}

std::vector<double> RunTrace::correlation_series(CorrelationKind kind) const {
  const auto it = std::find(kinds.begin(), kinds.end(), kind);
  if (it == kinds.end()) throw std::out_of_range("correlation kind not recorded in trace");
  const auto column = static_cast<std::size_t>(it - kinds.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.correlations[column]);
  return out;
}

const TraceRow& RunTrace::at_step(int k) const {
  if (k < 0 || static_cast<std::size_t>(k) >= rows.size() || rows[k].k != k) {
    throw std::out_of_range("trace has no row for step " + std::to_string(k));
  }
  return rows[k];
}

double tulsi_delta(const GridGeometry& geometry) {
  return std::acos(1.0 / std::sqrt(static_cast<double>(geometry.n_qubits())));
}

int t_delta(const GridGeometry& geometry, double delta) {
  const double n = static_cast<double>(geometry.n_positions());
  const double tan_delta = std::tan(delta);
  const double log_n = static_cast<double>(geometry.n_qubits());
  return static_cast<int>(
      std::lround(std::numbers::pi / 4 * std::sqrt(n * (log_n + tan_delta * tan_delta / 4))));
}

int default_kmax(const GridGeometry& geometry) { return t_delta(geometry, 0.0); }

double control_zero_probability(const WalkState& state) {
  double p = 0.0;
  for (int coin = 0; coin < kCoinDim; ++coin)
    for (const auto& a : state.block(0, coin)) p += std::norm(a);
  return p;
}

double collapse_control(WalkState& state, int outcome) {
  if (outcome != 0 && outcome != 1) throw std::invalid_argument("control outcome must be 0 or 1");
  const double p0 = control_zero_probability(state);
  const double p = outcome == 0 ? p0 : state.norm_squared() - p0;
  if (p < kCollapseTolerance) {
    throw DegenerateCollapse("control outcome " + std::to_string(outcome) +
                             " has vanishing probability");
  }
  const double scale = 1.0 / std::sqrt(p);
  for (int ctr = 0; ctr < kControlDim; ++ctr) {
    const double factor = ctr == outcome ? scale : 0.0;
    for (int coin = 0; coin < kCoinDim; ++coin)
      for (auto& a : state.block(ctr, coin)) a *= factor;
  }
  return p;
}

RunTrace run_unitary(const IMAConfig& config, const StepObserver& observer) {
  validate(config);
  RunTrace trace;
  trace.kinds = config.correlations;
  trace.rows.reserve(static_cast<std::size_t>(config.k_max) + 1);

  WalkState state = make_initial_state(config.geometry);
  const OracleSpec oracle = config.oracle();
  for (int k = 0; k <= config.k_max; ++k) {
    if (k > 0) step(state, oracle);
    TraceRow row = make_row(k, state, config, 0.0, 1.0);
    trace.rows.push_back(std::move(row));
    if (observer) observer(k, state, false);
  }
  return trace;
}

RunTrace run_ima_deterministic(const IMAConfig& config, const StepObserver& observer) {
  validate(config);
  RunTrace trace;
  trace.kinds = config.correlations;
  trace.rows.reserve(static_cast<std::size_t>(config.k_max) + 1);

  WalkState state = make_initial_state(config.geometry);
  trace.rows.push_back(make_row(0, state, config, 0.0, 1.0));
  if (observer) observer(0, state, false);

  double p_stopped = 0.0;
  double survival = 1.0;
  double p_zero = 0.0;
  double p_one_before = 1.0;

  const bool completed = evolve_branch(
      config, state,
      [&](int k, double p0, const WalkState& pre, bool collapsible) {
        p_zero = p0;
        p_one_before = 1.0 - p0;
        p_stopped += survival * p0;
        if (collapsible) {
          survival *= 1.0 - p0;
          return;
        }
        // No surviving branch: the remaining weight stops on outcome 0.
        p_stopped += survival * (1.0 - p0);
        survival = 0.0;
        TraceRow row = make_row(k, pre, config, p_stopped, survival);
        row.measured = true;
        row.p_zero = p0;
        row.p_control_one = p_one_before;
        trace.rows.push_back(std::move(row));
      },
      [&](int k, const WalkState& s, bool measured) {
        TraceRow row = make_row(k, s, config, p_stopped, survival);
        if (measured) {
          row.measured = true;
          row.p_zero = p_zero;
          row.p_control_one = p_one_before;
        }
        trace.rows.push_back(std::move(row));
        if (observer) observer(k, s, measured);
      });
  trace.terminated_early = !completed;
  return trace;
}

MonteCarloResult run_ima_monte_carlo(const IMAConfig& config) {
  validate(config);
  if (config.mode != RunMode::MonteCarlo) {
    throw std::invalid_argument("run_ima_monte_carlo needs mode = monte_carlo");
  }

  // Every trial that has not stopped yet sits on the same all-ones branch,
  // so one evolution provides all the outcome distributions to sample.
  std::vector<double> stop_probabilities;
  WalkState state = make_initial_state(config.geometry);
  const bool completed = evolve_branch(
      config, state,
      [&](int, double p0, const WalkState&, bool collapsible) {
        stop_probabilities.push_back(collapsible ? p0 : 1.0);
      },
      [](int, const WalkState&, bool) {});

  std::vector<double> cumulative;
  std::size_t target_index = 0;
  if (completed) {
    cumulative = position_distribution(state);
    std::partial_sum(cumulative.begin(), cumulative.end(), cumulative.begin());
    target_index = config.geometry.position_index(config.target);
  }

  MonteCarloResult result;
  result.trials = config.trials;
  for (int trial = 0; trial < config.trials; ++trial) {
    std::mt19937_64 rng(config.seed + static_cast<std::uint64_t>(trial));
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    bool success = false;
    bool stopped = false;
    for (double p0 : stop_probabilities) {
      if (uniform(rng) < p0) {
        success = true;
        stopped = true;
        break;
      }
    }
    if (!stopped && completed) {
      const double u = uniform(rng) * cumulative.back();
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      const auto drawn = static_cast<std::size_t>(
          std::min<std::ptrdiff_t>(it - cumulative.begin(), static_cast<std::ptrdiff_t>(cumulative.size()) - 1));
      success = drawn == target_index;
    }
    if (success) ++result.successes;
  }
  const double f = static_cast<double>(result.successes) / result.trials;
  result.success_frequency = f;
  result.standard_error = std::sqrt(f * (1.0 - f) / result.trials);
  return result;
}

}  // namespace qwalk
