#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qwalk/grid_state.hpp"

namespace qwalk {

enum class CorrelationKind {
  MiCtrRest,     // MI between control and (coin, position)
  MiCtrCoinPos,  // MI between (control, coin) and position
  MiPosCtrCoin,  // MI between (position, control) and coin
  MiCoinPos,     // MI between coin and position
  MiCtrCoin,     // MI between control and coin
  MiCtrPos,      // MI between control and position
  CcmCtrCoin,    // cumulative correlation of the control+coin qubits
};

inline constexpr CorrelationKind kAllCorrelationKinds[] = {
    CorrelationKind::MiCtrRest, CorrelationKind::MiCtrCoinPos, CorrelationKind::MiPosCtrCoin,
    CorrelationKind::MiCoinPos, CorrelationKind::MiCtrCoin,    CorrelationKind::MiCtrPos,
    CorrelationKind::CcmCtrCoin,
};

// Stable tags used in CSV headers and config files, e.g. "MI_ctr_rest".
std::string_view to_string(CorrelationKind kind);
std::optional<CorrelationKind> parse_correlation_kind(std::string_view tag);

struct CorrelationSeries {
  CorrelationKind kind = CorrelationKind::MiCtrRest;
  std::vector<double> values;
  std::optional<std::vector<double>> smoothed;
  bool normalized = false;
};

// Entropies of the three small reduced states; everything else follows by
// pure-state duality.
struct SmallEntropies {
  double control = 0.0;
  double coin = 0.0;
  double control_coin = 0.0;
};

SmallEntropies small_entropies(const WalkState& state);

double mutual_information(const WalkState& state, CorrelationKind kind);
double mutual_information(const SmallEntropies& s, CorrelationKind kind);

// Sum of the mutual informations of the three single-qubit bipartitions of
// rho_{ctr,c} (qubits: control, coin high bit, coin low bit).
double ccm(const WalkState& state);
double ccm(const DensityMatrix& rho_control_coin);

// Evaluates every requested kind on one state with a single Gram pass.
std::vector<double> evaluate_correlations(const WalkState& state,
                                          std::span<const CorrelationKind> kinds);

// Centered moving average with truncated windows at the edges. window must
// be odd and >= 1.
std::vector<double> smooth(std::span<const double> values, int window);
CorrelationSeries smooth(const CorrelationSeries& series, int window);

// Divides by the largest magnitude. Throws std::domain_error on an all-zero
// series.
std::vector<double> normalize(std::span<const double> values);
CorrelationSeries normalize(const CorrelationSeries& series);

// Smallest odd integer >= max(1, w).
int odd_window(int w);

}  // namespace qwalk
