#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "qwalk/grid_state.hpp"

namespace qwalk::test {

// Normalized state with independent Gaussian amplitudes.
inline WalkState random_state(const GridGeometry& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  WalkState s(g);
  for (auto& a : s.amplitudes()) a = Complex(gauss(rng), gauss(rng));
  const double n = s.norm();
  for (auto& a : s.amplitudes()) a /= n;
  return s;
}

inline double max_abs_diff(const WalkState& a, const WalkState& b) {
  double worst = 0.0;
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

inline WalkState basis_state(const GridGeometry& g, int ctr, int coin, Position p) {
  WalkState s(g);
  s.at(ctr, coin, p) = 1.0;
  return s;
}

}  // namespace qwalk::test
