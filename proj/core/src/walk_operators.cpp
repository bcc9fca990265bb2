#include "qwalk/walk_operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qwalk {

namespace {

constexpr int kLeft = static_cast<int>(Coin::Left);
constexpr int kRight = static_cast<int>(Coin::Right);
constexpr int kDown = static_cast<int>(Coin::Down);
constexpr int kUp = static_cast<int>(Coin::Up);

void coin_block(WalkState& state, int ctr) {
  std::array<Complex*, kCoinDim> planes{};
  for (int c = 0; c < kCoinDim; ++c) planes[c] = state.block(ctr, c).data();
  const std::size_t n = state.geometry().n_positions();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex half_sum = 0.5 * (planes[0][i] + planes[1][i] + planes[2][i] + planes[3][i]);
    for (int c = 0; c < kCoinDim; ++c) planes[c][i] = half_sum - planes[c][i];
  }
}

// new[L](x,y) = old[R](x-1,y), new[R](x,y) = old[L](x+1,y),
// new[D](x,y) = old[U](x,y-1), new[U](x,y) = old[D](x,y+1).
void shift_block(WalkState& state, int ctr) {
  const int side = state.geometry().side();
  auto left = state.block(ctr, kLeft);
  auto right = state.block(ctr, kRight);
  auto down = state.block(ctr, kDown);
  auto up = state.block(ctr, kUp);

  for (int y = 0; y < side; ++y) {
    auto row_r = right.subspan(static_cast<std::size_t>(y) * side, side);
    auto row_l = left.subspan(static_cast<std::size_t>(y) * side, side);
    std::rotate(row_r.begin(), row_r.end() - 1, row_r.end());  // x -> x+1
    std::rotate(row_l.begin(), row_l.begin() + 1, row_l.end());  // x -> x-1
  }
  std::swap_ranges(left.begin(), left.end(), right.begin());

  std::rotate(up.begin(), up.end() - side, up.end());   // y -> y+1
  std::rotate(down.begin(), down.begin() + side, down.end());  // y -> y-1
  std::swap_ranges(down.begin(), down.end(), up.begin());
}

Eigen::VectorXcd oracle_axis(const GridGeometry& geometry, const OracleSpec& spec) {
  Eigen::VectorXcd axis = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(geometry.state_size()));
  const double ctr_amp[2] = {-std::sin(spec.delta), std::cos(spec.delta)};
  for (int ctr = 0; ctr < kControlDim; ++ctr)
    for (int coin = 0; coin < kCoinDim; ++coin)
      axis(static_cast<Eigen::Index>(geometry.index(ctr, coin, spec.target))) = 0.5 * ctr_amp[ctr];
  return axis;
}

}  // namespace

void validate_oracle(const GridGeometry& geometry, const OracleSpec& spec) {
  if (!(spec.delta >= 0.0 && spec.delta < std::numbers::pi / 2)) {
    throw std::invalid_argument("oracle delta must lie in [0, pi/2)");
  }
  if (!geometry.contains(spec.target)) {
    throw std::invalid_argument("oracle target outside the grid");
  }
}

void apply_oracle(WalkState& state, const OracleSpec& spec) {
  const double weight[2] = {-0.5 * std::sin(spec.delta), 0.5 * std::cos(spec.delta)};
  Complex overlap{0.0, 0.0};
  for (int ctr = 0; ctr < kControlDim; ++ctr)
    for (int coin = 0; coin < kCoinDim; ++coin) overlap += weight[ctr] * state.at(ctr, coin, spec.target);
  const Complex scale = 2.0 * overlap;
  for (int ctr = 0; ctr < kControlDim; ++ctr)
    for (int coin = 0; coin < kCoinDim; ++coin) state.at(ctr, coin, spec.target) -= scale * weight[ctr];
}

void apply_coin(WalkState& state) {
  coin_block(state, 0);
  coin_block(state, 1);
}

void apply_shift(WalkState& state) {
  shift_block(state, 0);
  shift_block(state, 1);
}

void apply_conditional_walk(WalkState& state) {
  for (int coin = 0; coin < kCoinDim; ++coin) {
    for (auto& a : state.block(0, coin)) a = -a;
  }
  coin_block(state, 1);
  shift_block(state, 1);
}

void step(WalkState& state, const OracleSpec& spec) {
  apply_oracle(state, spec);
  apply_conditional_walk(state);
}

Eigen::MatrixXcd build_dense_unitary(const GridGeometry& geometry, const OracleSpec& spec) {
  if (geometry.n_positions() > 64) {
    throw std::invalid_argument("build_dense_unitary is limited to N <= 64");
  }
  const auto dim = static_cast<Eigen::Index>(geometry.state_size());
  const auto n = static_cast<Eigen::Index>(geometry.n_positions());
  const int side = geometry.side();
  auto wrap = [side](int v) { return (v % side + side) % side; };

  const Eigen::VectorXcd axis = oracle_axis(geometry, spec);
  const Eigen::MatrixXcd oracle =
      Eigen::MatrixXcd::Identity(dim, dim) - 2.0 * axis * axis.adjoint();

  // Coin: C0 (x) I_p on the 4N coin-position space.
  Eigen::MatrixXcd coin_small = -Eigen::MatrixXcd::Identity(kCoinDim, kCoinDim);
  coin_small.array() += 0.5;
  Eigen::MatrixXcd coin = Eigen::MatrixXcd::Zero(4 * n, 4 * n);
  for (int c = 0; c < kCoinDim; ++c)
    for (int d = 0; d < kCoinDim; ++d)
      for (Eigen::Index p = 0; p < n; ++p) coin(c * n + p, d * n + p) = coin_small(c, d);

  // Shift: sum of the four flip-flop outer products.
  Eigen::MatrixXcd shift = Eigen::MatrixXcd::Zero(4 * n, 4 * n);
  auto cp = [&](int c, int x, int y) {
    return static_cast<Eigen::Index>(c) * n + static_cast<Eigen::Index>(wrap(y)) * side + wrap(x);
  };
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      shift(cp(kLeft, x + 1, y), cp(kRight, x, y)) = 1.0;
      shift(cp(kDown, x, y + 1), cp(kUp, x, y)) = 1.0;
      shift(cp(kRight, x - 1, y), cp(kLeft, x, y)) = 1.0;
      shift(cp(kUp, x, y - 1), cp(kDown, x, y)) = 1.0;
    }
  }

  Eigen::MatrixXcd walk = Eigen::MatrixXcd::Zero(dim, dim);
  walk.topLeftCorner(4 * n, 4 * n) = -Eigen::MatrixXcd::Identity(4 * n, 4 * n);
  walk.bottomRightCorner(4 * n, 4 * n) = shift * coin;

  return walk * oracle;
}

}  // namespace qwalk
