#include "qwalk/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "qwalk/correlations.hpp"

namespace qwalk {

namespace {

void require_open_unit(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error(std::string(what) + " must lie strictly between 0 and 1");
  }
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::optional<double> parse_number(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

SweepRow run_cell(const GridGeometry& geometry, const DeltaChoice& delta, const LapseRule& rule,
                  const SweepOptions& options) {
  const int k_max = default_kmax(geometry);
  const int horizon =
      std::max(k_max, static_cast<int>(std::ceil(options.horizon_factor * k_max)));
  const std::optional<int> lapse = rule.lapse_for(geometry);

  IMAConfig config(geometry);
  config.delta = delta.resolve(geometry);
  config.k_max = horizon;
  config.lapse = lapse.value_or(1);
  config.success_target = options.success_target;
  config.correlations = {CorrelationKind::MiCoinPos};

  const RunTrace trace = lapse ? run_ima_deterministic(config) : run_unitary(config);

  SweepRow row;
  row.n_qubits = geometry.n_qubits();
  row.n_positions = geometry.n_positions();
  row.rule = rule.label();
  row.lapse = lapse;
  row.m = lapse ? geometry.side() / static_cast<double>(*lapse)
                : std::numeric_limits<double>::quiet_NaN();
  row.k_max = k_max;
  // A run that stopped with certainty before k_max keeps its last value.
  const auto& final_row = trace.rows.size() > static_cast<std::size_t>(k_max)
                              ? trace.rows[static_cast<std::size_t>(k_max)]
                              : trace.rows.back();
  row.p_cumulative_final = final_row.p_cumulative;
  row.total_steps = total_steps(k_max, row.p_cumulative_final, options.success_target);

  const int window = options.smoothing_window.value_or(lapse ? odd_window(*lapse) : 1);
  const OptimalStop best = optimal_kmax(trace, options.success_target, window);
  row.optimal_k = best.k;
  row.total_steps_at_optimal = best.total_steps;

  const auto mi = smooth(trace.correlation_series(CorrelationKind::MiCoinPos), window);
  row.mi_coin_pos_final = mi[std::min(mi.size() - 1, static_cast<std::size_t>(k_max))];
  row.mi_coin_pos_at_optimal = mi[static_cast<std::size_t>(best.k)];
  return row;
}

}  // namespace

double repetitions_needed(double p_single, double p_target) {
  require_open_unit(p_single, "single-run success probability");
  require_open_unit(p_target, "target success probability");
  return std::log(1.0 - p_target) / std::log(1.0 - p_single);
}

double total_steps(int k_max, double p_cumulative, double p_target) {
  return k_max * repetitions_needed(p_cumulative, p_target);
}

double efficiency(int k, double p_cumulative, double p_target) {
  if (k < 1) throw std::domain_error("efficiency needs k >= 1");
  return 1.0 / total_steps(k, p_cumulative, p_target);
}

OptimalStop optimal_kmax(const RunTrace& trace, double p_target, int smoothing_window) {
  require_open_unit(p_target, "target success probability");
  std::vector<int> steps;
  std::vector<double> e;
  bool any_positive = false;
  const double log_target = std::log(1.0 - p_target);
  for (const auto& row : trace.rows) {
    if (row.k < 1) continue;
    if (row.p_cumulative >= 1.0) {
      throw std::domain_error("cumulative probability reached 1; total steps undefined");
    }
    const double pc = std::max(0.0, row.p_cumulative);
    steps.push_back(row.k);
    e.push_back(pc > 0.0 ? std::log(1.0 - pc) / log_target / row.k : 0.0);
    any_positive = any_positive || pc > 0.0;
  }
  if (!any_positive) throw std::domain_error("cumulative probability is identically zero");

  const std::vector<double> smoothed = smooth(e, smoothing_window);
  std::size_t best = 0;
  for (std::size_t i = 1; i < smoothed.size(); ++i)
    if (smoothed[i] > smoothed[best]) best = i;
  return OptimalStop{steps[best], 1.0 / smoothed[best]};
}

double DeltaChoice::resolve(const GridGeometry& geometry) const {
  return tulsi ? tulsi_delta(geometry) : radians;
}

std::string DeltaChoice::label() const { return tulsi ? "tulsi" : format_number(radians); }

LapseRule LapseRule::parse(const std::string& text) {
  if (text == "unitary") return unitary();
  if (text == "sqrtN") return sqrt_n_over(1.0);
  const std::string_view view(text);
  constexpr std::string_view kOver = "sqrtN/";
  if (view.starts_with(kOver)) {
    if (auto m = parse_number(view.substr(kOver.size())); m && *m > 0.0) return sqrt_n_over(*m);
  } else if (view.ends_with("sqrtN")) {
    if (auto c = parse_number(view.substr(0, view.size() - 5)); c && *c > 0.0) {
      return sqrt_n_over(1.0 / *c);
    }
  } else {
    int l = 0;
    const auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), l);
    if (ec == std::errc{} && ptr == view.data() + view.size() && l >= 1) return fixed(l);
  }
  throw std::invalid_argument("unrecognized lapse rule '" + text +
                              "' (expected unitary, <int>, sqrtN, sqrtN/<m> or <c>sqrtN)");
}

std::optional<int> LapseRule::lapse_for(const GridGeometry& geometry) const {
  switch (kind) {
    case Kind::Unitary:
      return std::nullopt;
    case Kind::Fixed:
      return static_cast<int>(value);
    case Kind::SqrtNOver:
      return std::max(1, static_cast<int>(std::lround(geometry.side() / value)));
  }
  return std::nullopt;
}

std::string LapseRule::label() const {
  switch (kind) {
    case Kind::Unitary:
      return "unitary";
    case Kind::Fixed:
      return std::to_string(static_cast<int>(value));
    case Kind::SqrtNOver:
      if (value == 1.0) return "sqrtN";
      if (value < 1.0) return format_number(1.0 / value) + "sqrtN";
      return "sqrtN/" + format_number(value);
  }
  return "?";
}

SweepResult SweepResult::select(const std::string& rule_label) const {
  SweepResult out;
  for (const auto& r : rows)
    if (r.rule == rule_label) out.rows.push_back(r);
  std::stable_sort(out.rows.begin(), out.rows.end(),
                   [](const SweepRow& a, const SweepRow& b) { return a.n_positions < b.n_positions; });
  return out;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

SweepResult sweep_lapse(const GridGeometry& geometry, const DeltaChoice& delta,
                        std::span<const LapseRule> rules, const SweepOptions& options) {
  std::vector<LapseRule> cells{LapseRule::unitary()};
  for (const auto& r : rules)
    if (r.kind != LapseRule::Kind::Unitary) cells.push_back(r);

  SweepResult result;
  result.rows.resize(cells.size());
  parallel_for(cells.size(), options.jobs, [&](std::size_t i) {
    result.rows[i] = run_cell(geometry, delta, cells[i], options);
  });
  return result;
}

SweepResult sweep_order(std::span<const int> exponents, const DeltaChoice& delta,
                        std::span<const LapseRule> rules, const SweepOptions& options) {
  if (exponents.empty()) throw std::invalid_argument("sweep_order needs at least one exponent");
  if (rules.empty()) throw std::invalid_argument("sweep_order needs at least one lapse rule");
  std::vector<int> sorted(exponents.begin(), exponents.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<GridGeometry> geometries;
  for (int n : sorted) geometries.emplace_back(n);  // validates parity

  SweepResult result;
  result.rows.resize(geometries.size() * rules.size());
  parallel_for(result.rows.size(), options.jobs, [&](std::size_t i) {
    result.rows[i] = run_cell(geometries[i / rules.size()], delta, rules[i % rules.size()], options);
  });
  return result;
}

OrderFitSeries order_fit(const SweepResult& sweep, double alpha, double beta) {
  if (sweep.rows.size() < 3) throw std::invalid_argument("order_fit needs at least three grid sizes");
  for (const auto& r : sweep.rows) {
    if (r.rule != sweep.rows.front().rule) {
      throw std::invalid_argument("order_fit needs rows from a single lapse rule");
    }
  }
  std::vector<SweepRow> rows = sweep.rows;
  std::sort(rows.begin(), rows.end(),
            [](const SweepRow& a, const SweepRow& b) { return a.n_positions < b.n_positions; });

  OrderFitSeries fit;
  fit.alpha = alpha;
  fit.beta = beta;
  for (const auto& r : rows) {
    const double n = static_cast<double>(r.n_positions);
    fit.n_positions.push_back(r.n_positions);
    fit.values.push_back(r.total_steps / (beta * std::sqrt(n) * std::pow(std::log2(n), alpha)));
  }
  fit.flatness = flatness(fit.values);
  return fit;
}

double flatness(std::span<const double> values, std::size_t top) {
  if (values.empty()) throw std::invalid_argument("flatness of an empty series");
  const auto tail = values.last(std::min(top, values.size()));
  const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
  return *hi / *lo;
}

bool non_decreasing_tail(std::span<const double> values, std::size_t top) {
  const auto tail = values.last(std::min(top, values.size()));
  return std::is_sorted(tail.begin(), tail.end());
}

bool non_increasing_tail(std::span<const double> values, std::size_t top) {
  const auto tail = values.last(std::min(top, values.size()));
  return std::is_sorted(tail.begin(), tail.end(), std::greater<>());
}

}  // namespace qwalk
