#include "qwalk/correlations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace qwalk {

namespace {

// Bit positions inside the 8-dim control+coin index ctr*4 + coin.
constexpr unsigned kControlBit = 0b100;
constexpr unsigned kCoinBits = 0b011;

SmallEntropies entropies_from(const DensityMatrix& rho_cc) {
  return SmallEntropies{
      von_neumann_entropy(partial_trace_qubits(rho_cc, 3, kControlBit)),
      von_neumann_entropy(partial_trace_qubits(rho_cc, 3, kCoinBits)),
      von_neumann_entropy(rho_cc),
  };
}

constexpr std::array<std::pair<CorrelationKind, std::string_view>, 7> kTags{{
    {CorrelationKind::MiCtrRest, "MI_ctr_rest"},
    {CorrelationKind::MiCtrCoinPos, "MI_ctrcoin_pos"},
    {CorrelationKind::MiPosCtrCoin, "MI_posctr_coin"},
    {CorrelationKind::MiCoinPos, "MI_coin_pos"},
    {CorrelationKind::MiCtrCoin, "MI_ctr_coin"},
    {CorrelationKind::MiCtrPos, "MI_ctr_pos"},
    {CorrelationKind::CcmCtrCoin, "CCM_ctrcoin"},
}};

}  // namespace

std::string_view to_string(CorrelationKind kind) {
  for (const auto& [k, tag] : kTags)
    if (k == kind) return tag;
  return "unknown";
}

std::optional<CorrelationKind> parse_correlation_kind(std::string_view tag) {
  for (const auto& [k, t] : kTags)
    if (t == tag) return k;
  return std::nullopt;
}

SmallEntropies small_entropies(const WalkState& state) {
  return entropies_from(reduced_density(state, Subsystem::ControlCoin));
}

double mutual_information(const SmallEntropies& s, CorrelationKind kind) {
  // S(p) = S(ctr,c), S(c,p) = S(ctr), S(ctr,p) = S(c) for a pure state.
  switch (kind) {
    case CorrelationKind::MiCtrRest:
      return 2.0 * s.control;
    case CorrelationKind::MiCtrCoinPos:
      return 2.0 * s.control_coin;
    case CorrelationKind::MiPosCtrCoin:
      return 2.0 * s.coin;
    case CorrelationKind::MiCoinPos:
      return -s.control + s.coin + s.control_coin;
    case CorrelationKind::MiCtrCoin:
      return -s.control_coin + s.control + s.coin;
    case CorrelationKind::MiCtrPos:
      return -s.coin + s.control + s.control_coin;
    case CorrelationKind::CcmCtrCoin:
      break;
  }
  throw std::invalid_argument("mutual_information: CCM is not a bipartite measure");
}

double mutual_information(const WalkState& state, CorrelationKind kind) {
  return mutual_information(small_entropies(state), kind);
}

double ccm(const DensityMatrix& rho_cc) {
  const double s_all = von_neumann_entropy(rho_cc);
  double total = 0.0;
  for (unsigned qubit : {0b100u, 0b010u, 0b001u}) {
    const double s_a = von_neumann_entropy(partial_trace_qubits(rho_cc, 3, qubit));
    const double s_rest = von_neumann_entropy(partial_trace_qubits(rho_cc, 3, 0b111u & ~qubit));
    total += s_a + s_rest - s_all;
  }
  return total;
}

double ccm(const WalkState& state) { return ccm(reduced_density(state, Subsystem::ControlCoin)); }

std::vector<double> evaluate_correlations(const WalkState& state,
                                          std::span<const CorrelationKind> kinds) {
  std::vector<double> out;
  out.reserve(kinds.size());
  if (kinds.empty()) return out;
  const DensityMatrix rho_cc = reduced_density(state, Subsystem::ControlCoin);
  const SmallEntropies s = entropies_from(rho_cc);
  for (CorrelationKind kind : kinds) {
    out.push_back(kind == CorrelationKind::CcmCtrCoin ? ccm(rho_cc) : mutual_information(s, kind));
  }
  return out;
}

int odd_window(int w) {
  w = std::max(1, w);
  return w % 2 == 0 ? w + 1 : w;
}

std::vector<double> smooth(std::span<const double> values, int window) {
  if (window < 1 || window % 2 == 0) {
    throw std::invalid_argument("smoothing window must be odd and >= 1");
  }
  const auto n = static_cast<std::ptrdiff_t>(values.size());
  const std::ptrdiff_t half = window / 2;
  std::vector<double> out(values.begin(), values.end());
  if (window == 1) return out;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - half);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + half);
    double acc = 0.0;
    for (std::ptrdiff_t j = lo; j <= hi; ++j) acc += values[j];
    out[i] = acc / static_cast<double>(hi - lo + 1);
  }
  return out;
}

CorrelationSeries smooth(const CorrelationSeries& series, int window) {
  CorrelationSeries out = series;
  out.smoothed = smooth(series.values, window);
  return out;
}

std::vector<double> normalize(std::span<const double> values) {
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) throw std::domain_error("cannot normalize an all-zero series");
  std::vector<double> out(values.begin(), values.end());
  for (double& v : out) v /= peak;
  return out;
}

CorrelationSeries normalize(const CorrelationSeries& series) {
  CorrelationSeries out = series;
  out.values = normalize(series.values);
  if (series.smoothed) out.smoothed = normalize(*series.smoothed);
  out.normalized = true;
  return out;
}

}  // namespace qwalk
