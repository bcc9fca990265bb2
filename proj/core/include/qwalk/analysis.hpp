#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qwalk/grid_state.hpp"
#include "qwalk/ima_engine.hpp"

namespace qwalk {

// Classical amplification. All three throw std::domain_error outside the
// open unit interval.
double repetitions_needed(double p_single, double p_target);
double total_steps(int k_max, double p_cumulative, double p_target);
double efficiency(int k, double p_cumulative, double p_target);

struct OptimalStop {
  int k = 0;
  double total_steps = 0.0;
};

// Maximizes the smoothed e(k) over k >= 1 of the trace; ties go to the
// smaller k. total_steps is 1 / smoothed e at that k.
OptimalStop optimal_kmax(const RunTrace& trace, double p_target, int smoothing_window);

// Oracle angle, either fixed or the N-dependent Tulsi value.
struct DeltaChoice {
  bool tulsi = false;
  double radians = 0.0;

  double resolve(const GridGeometry& geometry) const;
  std::string label() const;
};

// How the lapse l depends on N: none (unitary), a fixed l, or l = round(sqrt(N)/m).
struct LapseRule {
  enum class Kind { Unitary, Fixed, SqrtNOver };
  Kind kind = Kind::Unitary;
  double value = 0.0;

  static LapseRule unitary() { return {Kind::Unitary, 0.0}; }
  static LapseRule fixed(int l) { return {Kind::Fixed, static_cast<double>(l)}; }
  static LapseRule sqrt_n_over(double m) { return {Kind::SqrtNOver, m}; }

  // Accepts "unitary", an integer, "sqrtN", "sqrtN/<m>" or "<c>sqrtN".
  // Throws std::invalid_argument otherwise.
  static LapseRule parse(const std::string& text);

  std::optional<int> lapse_for(const GridGeometry& geometry) const;
  std::string label() const;
};

struct SweepRow {
  int n_qubits = 0;
  std::size_t n_positions = 0;
  std::string rule;
  std::optional<int> lapse;  // empty for the unitary row
  double m = 0.0;            // sqrt(N) / l; NaN for the unitary row
  int k_max = 0;
  double p_cumulative_final = 0.0;
  double total_steps = 0.0;
  int optimal_k = 0;
  double total_steps_at_optimal = 0.0;
  // Smoothed MI between coin and position at k_max and at optimal_k.
  double mi_coin_pos_final = 0.0;
  double mi_coin_pos_at_optimal = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;

  // Rows with the given rule label, ascending in N.
  SweepResult select(const std::string& rule_label) const;
};

struct SweepOptions {
  double success_target = 0.5;
  // Traces run to ceil(horizon_factor * k_max) for the optimal-k search.
  double horizon_factor = 2.0;
  int jobs = 1;
  // Defaults to odd_window(l) for measured rows and 1 for the unitary row.
  std::optional<int> smoothing_window;
};

// One row per rule at a fixed N. A unitary row is always included.
SweepResult sweep_lapse(const GridGeometry& geometry, const DeltaChoice& delta,
                        std::span<const LapseRule> rules, const SweepOptions& options = {});

// One row per (even exponent, rule). Throws std::invalid_argument on an
// empty or odd exponent list.
SweepResult sweep_order(std::span<const int> exponents, const DeltaChoice& delta,
                        std::span<const LapseRule> rules, const SweepOptions& options = {});

struct OrderFitSeries {
  double alpha = 0.0;
  double beta = 1.0;
  std::vector<std::size_t> n_positions;
  std::vector<double> values;
  double flatness = 0.0;
};

// f(alpha, N) = TS / (beta sqrt(N) log2(N)^alpha) over a single-rule sweep
// with at least three grid sizes.
OrderFitSeries order_fit(const SweepResult& sweep, double alpha, double beta = 1.0);

// max/min over the last `top` entries.
double flatness(std::span<const double> values, std::size_t top = 3);

// Whether the last `top` entries are monotone.
bool non_decreasing_tail(std::span<const double> values, std::size_t top = 3);
bool non_increasing_tail(std::span<const double> values, std::size_t top = 3);

// Runs fn(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace qwalk
