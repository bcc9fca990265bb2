#include "validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "dense_reference.hpp"
#include "qwalk/ima_engine.hpp"

namespace qwalk::cli {

namespace {

WalkState random_state(const GridGeometry& geometry, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  WalkState state(geometry);
  for (auto& a : state.amplitudes()) a = Complex{normal(rng), normal(rng)};
  const double inv = 1.0 / state.norm();
  for (auto& a : state.amplitudes()) a *= inv;
  return state;
}

double max_abs_diff(const WalkState& a, const WalkState& b) {
  double worst = 0.0;
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

CheckResult check(std::string name, double deviation, double tolerance) {
  return CheckResult{std::move(name), deviation, tolerance, deviation <= tolerance};
}

CheckResult dense_equivalence(const ValidationHooks& hooks) {
  double worst = 0.0;
  for (int n : {2, 4, 6}) {
    const GridGeometry g(n);
    for (double delta : {0.0, std::numbers::pi / 4, tulsi_delta(g)}) {
      const OracleSpec spec{delta, Position{0, 0}};
      const Eigen::MatrixXcd u = build_dense_unitary(g, spec);
      WalkState state = make_initial_state(g);
      Eigen::VectorXcd psi = dense::to_vector(state);
      for (int k = 0; k < 50; ++k) {
        hooks.step(state, spec);
        psi = u * psi;
        worst = std::max(worst, (dense::to_vector(state) - psi).cwiseAbs().maxCoeff());
      }
    }
  }
  return check("dense_equivalence", worst, 1e-10);
}

template <typename Op>
CheckResult involution(std::string name, Op&& op) {
  const GridGeometry g(4);
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const WalkState original = random_state(g, rng);
    WalkState state = original;
    op(state);
    op(state);
    worst = std::max(worst, max_abs_diff(state, original));
  }
  return check(std::move(name), worst, 1e-12);
}

CheckResult invariant_subspace(const ValidationHooks& hooks) {
  const GridGeometry g(6);
  const Position target{3, 5};
  const OracleSpec spec{std::numbers::pi / 4, target};
  double worst = 0.0;
  for (int lapse : {1, 3, 8}) {
    WalkState state = make_initial_state(g);
    for (int k = 1; k <= 200; ++k) {
      hooks.step(state, spec);
      if (k % lapse == 0) collapse_control(state, 1);
      for (int coin = 0; coin < kCoinDim; ++coin) {
        const auto plane = state.block(0, coin);
        for (std::size_t p = 0; p < plane.size(); ++p) {
          if (p == g.position_index(target)) continue;
          worst = std::max(worst, std::abs(plane[p]));
        }
      }
    }
  }
  return check("invariant_subspace", worst, 1e-12);
}

CheckResult entropy_duality(const ValidationHooks& hooks) {
  const GridGeometry g(4);
  const OracleSpec spec{std::numbers::pi / 4, Position{1, 2}};
  WalkState state = make_initial_state(g);
  double worst = 0.0;
  for (int k = 1; k <= 12; ++k) {
    hooks.step(state, spec);
    const Eigen::VectorXcd psi = dense::to_vector(state);
    const std::pair<Subsystem, dense::Keep> pairs[] = {
        {Subsystem::CoinPosition, {false, true, true}},
        {Subsystem::ControlPosition, {true, false, true}},
        {Subsystem::Position, {false, false, true}},
    };
    for (const auto& [subsystem, keep] : pairs) {
      worst = std::max(worst, std::abs(subsystem_entropy(state, subsystem) - dense::entropy_of(g, psi, keep)));
    }
  }
  return check("entropy_duality", worst, 1e-10);
}

CheckResult monte_carlo_agreement() {
  const GridGeometry g(6);
  IMAConfig config(g);
  config.delta = std::numbers::pi / 4;
  config.lapse = 4;
  config.k_max = default_kmax(g);
  const double p = run_ima_deterministic(config).rows.back().p_cumulative;

  config.mode = RunMode::MonteCarlo;
  config.trials = 20000;
  config.seed = 20140101;
  const MonteCarloResult mc = run_ima_monte_carlo(config);
  const double sigma = std::sqrt(p * (1.0 - p) / config.trials);
  return check("monte_carlo_vs_deterministic", std::abs(mc.success_frequency - p), 3.0 * sigma);
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationHooks& hooks) {
  std::vector<CheckResult> results;
  results.push_back(dense_equivalence(hooks));
  results.push_back(involution("oracle_involution", [](WalkState& s) {
    apply_oracle(s, OracleSpec{std::numbers::pi / 4, Position{1, 3}});
  }));
  results.push_back(involution("coin_involution", [](WalkState& s) { apply_coin(s); }));
  results.push_back(involution("shift_involution", [&](WalkState& s) { hooks.shift(s); }));
  results.push_back(invariant_subspace(hooks));
  results.push_back(entropy_duality(hooks));
  results.push_back(monte_carlo_agreement());
  return results;
}

void print_report(std::ostream& out, const std::vector<CheckResult>& results) {
  char line[160];
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%-4s %-30s max_dev=%.3e tol=%.1e\n", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.max_deviation, r.tolerance);
    out << line;
  }
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace qwalk::cli
