// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "dense_reference.hpp"
#include "qwalk/analysis.hpp"
#include "qwalk/correlations.hpp"
#include "qwalk/ima_engine.hpp"
#include "qwalk/walk_operators.hpp"

using namespace qwalk;

namespace {

constexpr double kPi4 = std::numbers::pi / 4;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

IMAConfig config_for(int n, double delta, int lapse, int k_max) {
  IMAConfig c{GridGeometry(n)};
  c.delta = delta;
  c.lapse = lapse;
  c.k_max = k_max;
  return c;
}

WalkState random_state(const GridGeometry& g, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  WalkState s(g);
  for (auto& a : s.amplitudes()) a = Complex(gauss(rng), gauss(rng));
  const double n = s.norm();
  for (auto& a : s.amplitudes()) a /= n;
  return s;
}

double max_abs_diff(const WalkState& a, const WalkState& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.amplitudes().size(); ++i)
    worst = std::max(worst, std::abs(a.amplitudes()[i] - b.amplitudes()[i]));
  return worst;
}

Eigen::MatrixXcd matrix_power(Eigen::MatrixXcd base, int e) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(base.rows(), base.cols());
  while (e > 0) {
    if (e & 1) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

// 1. Structured evolution against the explicit matrix power.
Outcome dense_equivalence() {
  double worst = 0.0;
  std::mt19937_64 rng(101);
  for (int n : {2, 4, 6}) {
    const GridGeometry g(n);
    for (double delta : {0.0, kPi4, tulsi_delta(g)}) {
      const OracleSpec spec{delta, {0, 0}};
      const Eigen::MatrixXcd u50 = matrix_power(build_dense_unitary(g, spec), 50);
      for (WalkState s : {make_initial_state(g), random_state(g, rng)}) {
        const Eigen::VectorXcd expected = u50 * dense::to_vector(s);
        for (int k = 0; k < 50; ++k) step(s, spec);
        worst = std::max(worst, (dense::to_vector(s) - expected).cwiseAbs().maxCoeff());
      }
    }
  }
  return {worst < 1e-10, fmt("max |psi - U^50 psi0| = %.3e (tol 1e-10)", worst)};
}

// 2. Involutions on random states and norm drift.
Outcome operator_algebra() {
  const GridGeometry g(10);
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> angle(0.0, 1.5);
  std::uniform_int_distribution<int> coord(0, g.side() - 1);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const WalkState s = random_state(g, rng);
    const OracleSpec spec{angle(rng), {coord(rng), coord(rng)}};
    WalkState a = s, b = s, c = s;
    apply_oracle(a, spec);
    apply_oracle(a, spec);
    apply_coin(b);
    apply_coin(b);
    apply_shift(c);
    apply_shift(c);
    worst = std::max({worst, max_abs_diff(a, s), max_abs_diff(b, s), max_abs_diff(c, s)});
  }
  WalkState s = make_initial_state(g);
  const OracleSpec spec{kPi4, {5, 9}};
  for (int k = 0; k < 1000; ++k) step(s, spec);
  const double drift = std::abs(s.norm() - 1.0);
  return {worst < 1e-12 && drift < 1e-9,
          fmt("involution error %.3e (tol 1e-12), norm drift %.3e (tol 1e-9)", worst, drift)};
}

// 3. Control-0 amplitude only ever sits on the target.
Outcome invariant_subspace() {
  const GridGeometry g(10);
  const Position target{7, 19};
  double worst = 0.0;
  for (double delta : {kPi4, tulsi_delta(g)}) {
    for (int lapse : {1, 2, 4, 8, 16, 32, 64}) {
      IMAConfig c = config_for(10, delta, lapse, 2 * default_kmax(g));
      c.target = target;
      run_ima_deterministic(c, [&](int, const WalkState& s, bool) {
        for (int coin = 0; coin < kCoinDim; ++coin) {
          const auto block = s.block(0, coin);
          for (std::size_t p = 0; p < block.size(); ++p)
            if (p != g.position_index(target)) worst = std::max(worst, std::abs(block[p]));
        }
      });
    }
  }
  return {worst < 1e-12, fmt("max |a(0, c, p != t)| = %.3e (tol 1e-12)", worst)};
}

// 4. delta = 0 reduces to the uncontrolled walk.
Outcome akr_reduction() {
  double worst_p0 = 0.0, worst_diff = 0.0;
  const GridGeometry g(10);
  for (int lapse : {1, 4, 32}) {
    const auto c = config_for(10, 0.0, lapse, 2 * default_kmax(g));
    const RunTrace ima = run_ima_deterministic(c);
    const RunTrace uni = run_unitary(c);
    for (std::size_t k = 0; k < ima.rows.size(); ++k) {
      if (ima.rows[k].measured) worst_p0 = std::max(worst_p0, ima.rows[k].p_zero);
      worst_diff = std::max(worst_diff, std::abs(ima.rows[k].p_cumulative - uni.rows[k].p_target));
    }
  }
  return {worst_p0 < 1e-14 && worst_diff < 1e-12,
          fmt("max P0 = %.3e (tol 1e-14), max |P_c - P_t unitary| = %.3e (tol 1e-12)", worst_p0, worst_diff)};
}

// 5. Measurements never beat the unitary Tulsi walk at k_max.
Outcome tulsi_optimality() {
  const GridGeometry g(14);
  const double delta = tulsi_delta(g);
  const int k_max = default_kmax(g);
  const double unitary = run_unitary(config_for(14, delta, 1, k_max)).rows.back().p_target;
  bool ok = true;
  std::string values;
  for (int lapse : {2 * g.side(), g.side(), g.side() / 2, g.side() / 4, g.side() / 8}) {
    const double p = run_ima_deterministic(config_for(14, delta, lapse, k_max)).rows.back().p_cumulative;
    ok = ok && p <= unitary;
    values += fmt(" l=%d:%.4f", lapse, p);
  }
  return {ok, fmt("unitary P_c=%.4f;%s", unitary, values.c_str())};
}

// 6. Window maxima of P_t decay after the first maximum.
Outcome damped_envelope() {
  const GridGeometry g(14);
  const int lapse = g.side() / 16;
  const int window = 4 * lapse;
  const int k_max = default_kmax(g);
  const RunTrace t = run_ima_deterministic(config_for(14, kPi4, lapse, k_max));
  std::vector<double> maxima;
  for (int start = 0; start + window - 1 <= k_max; start += window) {
    double m = 0.0;
    for (int k = start; k < start + window; ++k) m = std::max(m, t.rows[static_cast<std::size_t>(k)].p_target);
    maxima.push_back(m);
  }
  const auto first = static_cast<std::size_t>(std::max_element(maxima.begin(), maxima.end()) - maxima.begin());
  double worst = 0.0;
  std::size_t worst_at = first;
  for (std::size_t i = first + 1; i < maxima.size(); ++i) {
    const double rise = maxima[i] / maxima[i - 1] - 1.0;
    if (rise > worst) {
      worst = rise;
      worst_at = i;
    }
  }
  return {worst <= 0.05,
          fmt("%zu windows of %d steps to k_max=%d; worst rise %.1f%% into window at k=%zu (slack 5%%)",
              maxima.size(), window, k_max, 100 * worst, worst_at * static_cast<std::size_t>(window))};
}

// 7. Control-isolating correlations vanish right after each collapse.
Outcome post_measurement_zeroing() {
  const std::vector<CorrelationKind> kinds{CorrelationKind::MiCtrRest, CorrelationKind::MiCtrPos,
                                           CorrelationKind::MiCtrCoin};
  double worst_measured = 0.0, worst_l1 = 0.0;
  for (int lapse : {1, 4, 16}) {
    auto c = config_for(10, kPi4, lapse, 160);
    c.correlations = kinds;
    for (const auto& r : run_ima_deterministic(c).rows) {
      const double m = *std::max_element(r.correlations.begin(), r.correlations.end(),
                                         [](double a, double b) { return std::abs(a) < std::abs(b); });
      if (r.measured) worst_measured = std::max(worst_measured, std::abs(m));
      if (lapse == 1) worst_l1 = std::max(worst_l1, std::abs(m));
    }
  }
  return {worst_measured < 1e-10 && worst_l1 < 1e-10,
          fmt("post-collapse max %.3e, l=1 every-step max %.3e (tol 1e-10)", worst_measured, worst_l1)};
}

// 8. MI_ctr_rest against 2 S(rho_ctr) from an SVD of the control x rest amplitude matrix.
Outcome pure_state_identity() {
  double worst = 0.0;
  int rows = 0;
  struct Run {
    int n;
    double delta;
    int lapse;
    bool unitary;
  };
  for (const Run& run : {Run{8, kPi4, 1, true}, Run{8, kPi4, 1, false}, Run{8, kPi4, 8, false},
                         Run{10, 0.6, 5, false}, Run{10, kPi4, 16, false}}) {
    const GridGeometry g(run.n);
    auto c = config_for(run.n, run.delta, run.lapse, 2 * default_kmax(g));
    c.correlations = {CorrelationKind::MiCtrRest};
    const auto observer = [&](int k, const WalkState& s, bool) {
      const auto amps = s.amplitudes();
      const auto half = static_cast<Eigen::Index>(amps.size() / 2);
      Eigen::MatrixXcd m(2, half);
      for (Eigen::Index j = 0; j < half; ++j) {
        m(0, j) = amps[static_cast<std::size_t>(j)];
        m(1, j) = amps[static_cast<std::size_t>(half + j)];
      }
      const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
      double entropy = 0.0;
      for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        const double lambda = svd.singularValues()(i) * svd.singularValues()(i);
        if (lambda > 0.0) entropy -= lambda * std::log2(lambda);
      }
      (void)k;
      worst = std::max(worst, std::abs(mutual_information(s, CorrelationKind::MiCtrRest) - 2.0 * entropy));
      ++rows;
    };
    if (run.unitary) {
      run_unitary(c, observer);
    } else {
      run_ima_deterministic(c, observer);
    }
  }
  return {worst < 1e-12, fmt("max |MI_ctr_rest - 2 S_svd(ctr)| = %.3e over %d steps (tol 1e-12)", worst, rows)};
}

// 9. Late-time agreement of the three position/coin correlations.
Outcome late_time_convergence() {
  const GridGeometry g(12);
  const int k_max = default_kmax(g);
  const int lapse = g.side() / 2;
  auto c = config_for(12, kPi4, lapse, 10 * k_max);
  c.correlations = {CorrelationKind::MiPosCtrCoin, CorrelationKind::MiCtrCoinPos, CorrelationKind::MiCoinPos};
  const RunTrace t = run_ima_deterministic(c);
  const int window = odd_window(lapse);
  auto worst_spread = [&](int w) {
    std::vector<std::vector<double>> s;
    for (auto kind : c.correlations) s.push_back(smooth(t.correlation_series(kind), w));
    double worst = 0.0;
    for (int k = 5 * k_max + 1; k <= c.k_max; ++k) {
      const auto i = static_cast<std::size_t>(k);
      const double common = (s[0][i] + s[1][i] + s[2][i]) / 3.0;
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) worst = std::max(worst, std::abs(s[a][i] - s[b][i]) / common);
    }
    return worst;
  };
  const double smoothed = worst_spread(window);
  const double raw = worst_spread(1);
  return {smoothed <= 0.05,
          fmt("k in (%d, %d], window %d: worst pairwise gap %.2f%% of common value (raw %.2f%%; tol 5%%)",
              5 * k_max, c.k_max, window, 100 * smoothed, 100 * raw)};
}

// 10. Unitary MI_coin_pos minimum sits near the P_t maximum.
Outcome minimum_alignment() {
  const GridGeometry g(14);
  auto c = config_for(14, kPi4, 1, default_kmax(g));
  c.correlations = {CorrelationKind::MiCoinPos};
  const RunTrace t = run_unitary(c);
  const auto p = t.p_target_series();
  const int k_peak = static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
  const auto mi = smooth(t.correlation_series(CorrelationKind::MiCoinPos), 1);
  int k_min = -1;
  for (std::size_t k = 1; k + 1 < mi.size(); ++k) {
    if (mi[k] < mi[k - 1] && mi[k] <= mi[k + 1]) {
      if (k_min < 0 || std::abs(static_cast<int>(k) - k_peak) < std::abs(k_min - k_peak)) k_min = static_cast<int>(k);
    }
  }
  if (k_min < 0) return {false, "no local minimum of MI_coin_pos"};
  const double offset = std::abs(k_min - k_peak) / static_cast<double>(k_peak);
  return {offset <= 0.10, fmt("argmax P_t k=%d, nearest MI_coin_pos minimum k=%d, offset %.1f%% (tol 10%%)",
                              k_peak, k_min, 100 * offset)};
}

// 11. The lapse sweep is minimized at m = 4.
Outcome lapse_optimum() {
  bool ok = true;
  std::string detail;
  const std::vector<double> ms{1, 2, 4, 8, 16};
  std::vector<LapseRule> rules;
  for (double m : ms) rules.push_back(LapseRule::sqrt_n_over(m));
  for (int n : {12, 14}) {
    const SweepResult s = sweep_lapse(GridGeometry(n), DeltaChoice{false, kPi4}, rules);
    double min_std = std::numeric_limits<double>::infinity(), min_opt = min_std;
    const SweepRow* at4 = nullptr;
    for (const auto& r : s.rows) {
      if (!r.lapse) continue;
      min_std = std::min(min_std, r.total_steps);
      min_opt = std::min(min_opt, r.total_steps_at_optimal);
      if (r.m == 4.0) at4 = &r;
    }
    const double gap_std = at4->total_steps / min_std - 1.0;
    const double gap_opt = at4->total_steps_at_optimal / min_opt - 1.0;
    const double between = std::abs(at4->total_steps_at_optimal / at4->total_steps - 1.0);
    ok = ok && gap_std <= 0.05 && gap_opt <= 0.05 && between <= 0.10;
    detail += fmt("%sn=%d TS(m=4) %.1f/%.1f, gap to min %.1f%%/%.1f%%, std vs opt %.1f%%", detail.empty() ? "" : "; ",
                  n, at4->total_steps, at4->total_steps_at_optimal, 100 * gap_std, 100 * gap_opt, 100 * between);
  }
  return {ok, detail + " (tol 5%, 10%)"};
}

// 12. Monte Carlo against the deterministic branch.
Outcome monte_carlo() {
  const GridGeometry g(8);
  auto c = config_for(8, kPi4, g.side() / 2, default_kmax(g));
  const double p = run_ima_deterministic(c).rows.back().p_cumulative;
  c.mode = RunMode::MonteCarlo;
  c.trials = 100000;
  c.seed = 20140101;
  const MonteCarloResult mc = run_ima_monte_carlo(c);
  const double z = std::abs(mc.success_frequency - p) / mc.standard_error;
  return {z <= 3.0, fmt("frequency %.5f vs P_c %.5f, %.2f standard errors (tol 3)", mc.success_frequency, p, z)};
}

// 13. Order brackets from the N sweep.
Outcome order_properties() {
#ifdef QWALK_LONG_ACCEPTANCE
  const std::vector<int> exponents{8, 10, 12, 14, 16, 18};
#else
  const std::vector<int> exponents{8, 10, 12, 14};
#endif
  std::vector<LapseRule> rules;
  for (const char* r : {"unitary", "1", "sqrtN", "sqrtN/2", "sqrtN/4", "sqrtN/8"}) rules.push_back(LapseRule::parse(r));
  SweepOptions options;
  options.jobs = 4;
  const SweepResult sweep = sweep_order(exponents, DeltaChoice{false, kPi4}, rules, options);

  std::vector<double> per_n;
  for (const auto& r : sweep.select("1").rows) per_n.push_back(r.total_steps / static_cast<double>(r.n_positions));
  const double flat_a = flatness(per_n);
  const bool a = flat_a < 1.2;
  const double flat_b = order_fit(sweep.select("unitary"), 1.5).flatness;
  const bool b = flat_b < 1.25;

  auto bracket = [&](const char* rule, double lo, double hi, std::string& note) {
    const auto low = order_fit(sweep.select(rule), lo).values;
    const auto high = order_fit(sweep.select(rule), hi).values;
    const bool up = non_decreasing_tail(low);
    const bool down = non_increasing_tail(high);
    note += fmt(" %s:f(%.2g)%s,f(%.3g)%s", rule, lo, up ? "up" : "NOT-up", hi, down ? "down" : "NOT-down");
    return up && down;
  };
  std::string note_c, note_d;
  const bool c = bracket("sqrtN", 0.9, 1.25, note_c) & bracket("sqrtN/2", 0.9, 1.25, note_c);
  const bool d = bracket("sqrtN/4", 0.6, 0.9, note_d) & bracket("sqrtN/8", 0.6, 0.9, note_d);
  return {a && b && c && d,
          fmt("n=%d..%d; (a) %s TS/N flatness %.3f; (b) %s f(1.5) flatness %.3f; (c) %s%s; (d) %s%s",
              exponents.front(), exponents.back(), a ? "ok" : "FAIL", flat_a, b ? "ok" : "FAIL", flat_b,
              c ? "ok" : "FAIL", note_c.c_str(), d ? "ok" : "FAIL", note_d.c_str())};
}

// 14. The Tulsi peak probability barely depends on N.
Outcome tulsi_n_independence() {
  double lo = 1.0, hi = 0.0;
  std::string values;
  for (int n : {10, 12, 14, 16}) {
    const GridGeometry g(n);
    const double delta = tulsi_delta(g);
    const auto p = run_unitary(config_for(n, delta, 1, 2 * t_delta(g, delta))).p_target_series();
    const double peak = *std::max_element(p.begin(), p.end());
    lo = std::min(lo, peak);
    hi = std::max(hi, peak);
    values += fmt(" n=%d:%.4f", n, peak);
  }
  return {hi / lo < 2.0, fmt("max P_t%s; ratio %.3f (tol 2)", values.c_str(), hi / lo)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"dense-oracle equivalence", dense_equivalence},
      {"operator algebra", operator_algebra},
      {"invariant subspace", invariant_subspace},
      {"delta=0 reduction", akr_reduction},
      {"Tulsi optimality under measurement", tulsi_optimality},
      {"damped envelope", damped_envelope},
      {"post-measurement zeroing", post_measurement_zeroing},
      {"pure-state MI identity", pure_state_identity},
      {"late-time correlation convergence", late_time_convergence},
      {"unitary minimum/maximum alignment", minimum_alignment},
      {"lapse optimum", lapse_optimum},
      {"Monte Carlo consistency", monte_carlo},
      {"order properties", order_properties},
      {"N-independence of Tulsi peak", tulsi_n_independence},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                seconds);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
