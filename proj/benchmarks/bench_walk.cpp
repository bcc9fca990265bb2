#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "qwalk/analysis.hpp"
#include "qwalk/correlations.hpp"
#include "qwalk/ima_engine.hpp"
#include "qwalk/walk_operators.hpp"

namespace {

using namespace qwalk;

void BM_Step(benchmark::State& st) {
  const GridGeometry g(static_cast<int>(st.range(0)));
  WalkState s = make_initial_state(g);
  const OracleSpec spec{std::numbers::pi / 4, {0, 0}};
  for (auto _ : st) {
    step(s, spec);
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(g.state_size()));
}
BENCHMARK(BM_Step)->DenseRange(8, 18, 2);

void BM_Shift(benchmark::State& st) {
  const GridGeometry g(static_cast<int>(st.range(0)));
  WalkState s = make_initial_state(g);
  for (auto _ : st) {
    apply_shift(s);
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(g.state_size()));
}
BENCHMARK(BM_Shift)->DenseRange(8, 18, 2);

void BM_Correlations(benchmark::State& st) {
  const GridGeometry g(static_cast<int>(st.range(0)));
  WalkState s = make_initial_state(g);
  const OracleSpec spec{std::numbers::pi / 4, {0, 0}};
  for (int k = 0; k < 20; ++k) step(s, spec);
  const std::vector<CorrelationKind> kinds(std::begin(kAllCorrelationKinds), std::end(kAllCorrelationKinds));
  for (auto _ : st) benchmark::DoNotOptimize(evaluate_correlations(s, kinds));
}
BENCHMARK(BM_Correlations)->DenseRange(8, 18, 2);

void BM_ImaRun(benchmark::State& st) {
  const GridGeometry g(static_cast<int>(st.range(0)));
  IMAConfig c(g);
  c.delta = std::numbers::pi / 4;
  c.lapse = g.side() / 4;
  c.k_max = default_kmax(g);
  for (auto _ : st) benchmark::DoNotOptimize(run_ima_deterministic(c).rows.back().p_cumulative);
}
BENCHMARK(BM_ImaRun)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

void BM_LapseSweep(benchmark::State& st) {
  const GridGeometry g(12);
  std::vector<LapseRule> rules;
  for (double m : {1.0, 2.0, 4.0, 8.0, 16.0}) rules.push_back(LapseRule::sqrt_n_over(m));
  SweepOptions options;
  options.jobs = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(sweep_lapse(g, DeltaChoice{false, 0.785}, rules, options).rows.size());
}
BENCHMARK(BM_LapseSweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
