#include "qwalk/grid_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace qwalk {

namespace {

constexpr double kTraceTolerance = 1e-8;
constexpr double kNegativeEigenTolerance = 1e-12;

// Gram matrix of the eight (ctr, coin) planes: rho[a][b] = <plane_b|plane_a>.
Eigen::Matrix<Complex, 8, 8> control_coin_gram(const WalkState& state) {
  Eigen::Matrix<Complex, 8, 8> rho;
  for (int a = 0; a < 8; ++a) {
    const auto pa = state.block(a / kCoinDim, a % kCoinDim);
    for (int b = a; b < 8; ++b) {
      const auto pb = state.block(b / kCoinDim, b % kCoinDim);
      Complex acc{0.0, 0.0};
      for (std::size_t i = 0; i < pa.size(); ++i) acc += pa[i] * std::conj(pb[i]);
      rho(a, b) = acc;
      rho(b, a) = std::conj(acc);
    }
  }
  return rho;
}

}  // namespace

GridGeometry::GridGeometry(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 2 || n_qubits > 28 || n_qubits % 2 != 0) {
    throw std::invalid_argument("grid needs an even number of position qubits in [2, 28], got " +
                                std::to_string(n_qubits));
  }
  side_ = 1 << (n_qubits / 2);
  n_positions_ = std::size_t{1} << n_qubits;
}

WalkState::WalkState(GridGeometry geometry)
    : geometry_(geometry), amplitudes_(geometry.state_size(), Complex{0.0, 0.0}) {}

double WalkState::norm_squared() const {
  double acc = 0.0;
  for (const auto& a : amplitudes_) acc += std::norm(a);
  return acc;
}

double WalkState::norm() const { return std::sqrt(norm_squared()); }

WalkState make_initial_state(const GridGeometry& geometry) {
  WalkState state(geometry);
  const double amp = 1.0 / (2.0 * std::sqrt(static_cast<double>(geometry.n_positions())));
  for (int coin = 0; coin < kCoinDim; ++coin) {
    auto plane = state.block(1, coin);
    std::fill(plane.begin(), plane.end(), Complex{amp, 0.0});
  }
  return state;
}

double target_probability(const WalkState& state, Position target) {
  const auto& g = state.geometry();
  if (!g.contains(target)) {
    throw std::out_of_range("target position outside the grid");
  }
  double p = 0.0;
  for (int ctr = 0; ctr < kControlDim; ++ctr)
    for (int coin = 0; coin < kCoinDim; ++coin) p += std::norm(state.at(ctr, coin, target));
  return p;
}

std::vector<double> position_distribution(const WalkState& state) {
  std::vector<double> dist(state.geometry().n_positions(), 0.0);
  for (int ctr = 0; ctr < kControlDim; ++ctr) {
    for (int coin = 0; coin < kCoinDim; ++coin) {
      const auto plane = state.block(ctr, coin);
      for (std::size_t i = 0; i < plane.size(); ++i) dist[i] += std::norm(plane[i]);
    }
  }
  return dist;
}

DensityMatrix reduced_density(const WalkState& state, Subsystem subsystem) {
  const Eigen::Matrix<Complex, 8, 8> rho = control_coin_gram(state);
  switch (subsystem) {
    case Subsystem::ControlCoin:
      return DensityMatrix{rho};
    case Subsystem::Control: {
      Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int c = 0; c < kCoinDim; ++c) out(i, j) += rho(i * kCoinDim + c, j * kCoinDim + c);
      return DensityMatrix{out};
    }
    case Subsystem::Coin: {
      Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(4, 4);
      for (int c = 0; c < kCoinDim; ++c)
        for (int d = 0; d < kCoinDim; ++d)
          for (int i = 0; i < 2; ++i) out(c, d) += rho(i * kCoinDim + c, i * kCoinDim + d);
      return DensityMatrix{out};
    }
    default:
      throw std::invalid_argument("reduced_density: position-containing subsystems are not materialized");
  }
}

double subsystem_entropy(const WalkState& state, Subsystem subsystem) {
  switch (subsystem) {
    case Subsystem::Control:
    case Subsystem::CoinPosition:
      return von_neumann_entropy(reduced_density(state, Subsystem::Control));
    case Subsystem::Coin:
    case Subsystem::ControlPosition:
      return von_neumann_entropy(reduced_density(state, Subsystem::Coin));
    case Subsystem::ControlCoin:
    case Subsystem::Position:
      return von_neumann_entropy(reduced_density(state, Subsystem::ControlCoin));
  }
  throw std::invalid_argument("unknown subsystem");
}

Eigen::VectorXd density_eigenvalues(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues();
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const double trace = rho.entries.trace().real();
  if (std::abs(trace - 1.0) > kTraceTolerance) {
    throw std::domain_error("density matrix trace " + std::to_string(trace) + " is not 1");
  }
  double s = 0.0;
  for (double lambda : density_eigenvalues(rho)) {
    if (lambda < -kNegativeEigenTolerance) {
      throw std::domain_error("density matrix has a negative eigenvalue " + std::to_string(lambda));
    }
    lambda = std::clamp(lambda, 0.0, 1.0);
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return s;
}

DensityMatrix partial_trace_qubits(const DensityMatrix& rho, int n_qubits, unsigned keep_mask) {
  const int dim = 1 << n_qubits;
  if (rho.dim() != dim) throw std::invalid_argument("partial_trace_qubits: dimension mismatch");

  std::vector<int> kept;
  for (int q = 0; q < n_qubits; ++q)
    if (keep_mask & (1u << q)) kept.push_back(q);
  const int out_dim = 1 << kept.size();

  // Compress the kept bits of a full index into a reduced index.
  auto reduce = [&](int idx) {
    int r = 0;
    for (std::size_t k = 0; k < kept.size(); ++k)
      if (idx & (1 << kept[k])) r |= 1 << k;
    return r;
  };
  const int traced_mask = (dim - 1) & ~static_cast<int>(keep_mask);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_dim, out_dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if ((i & traced_mask) != (j & traced_mask)) continue;
      out(reduce(i), reduce(j)) += rho.entries(i, j);
    }
  }
  return DensityMatrix{out};
}

}  // namespace qwalk
