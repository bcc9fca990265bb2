#include "dense_reference.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace qwalk::dense {

Eigen::VectorXcd to_vector(const WalkState& state) {
  const auto amps = state.amplitudes();
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) psi(static_cast<Eigen::Index>(i)) = amps[i];
  return psi;
}

WalkState from_vector(const GridGeometry& geometry, const Eigen::VectorXcd& psi) {
  WalkState state(geometry);
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = psi(static_cast<Eigen::Index>(i));
  return state;
}

Eigen::MatrixXcd reduced(const GridGeometry& geometry, const Eigen::VectorXcd& psi, Keep keep) {
  const int n_pos = static_cast<int>(geometry.n_positions());
  const int dims[3] = {2, 4, n_pos};
  const bool kept[3] = {keep.control, keep.coin, keep.position};

  int rows = 1;
  int cols = 1;
  for (int r = 0; r < 3; ++r) (kept[r] ? rows : cols) *= dims[r];

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, cols);
  for (int ctr = 0; ctr < 2; ++ctr) {
    for (int coin = 0; coin < 4; ++coin) {
      for (int p = 0; p < n_pos; ++p) {
        const int digits[3] = {ctr, coin, p};
        int row = 0;
        int col = 0;
        for (int r = 0; r < 3; ++r) {
          if (kept[r]) {
            row = row * dims[r] + digits[r];
          } else {
            col = col * dims[r] + digits[r];
          }
        }
        m(row, col) = psi((ctr * 4 + coin) * n_pos + p);
      }
    }
  }
  return m * m.adjoint();
}

double entropy(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (double lambda : solver.eigenvalues()) {
    if (lambda > 1e-300) s -= lambda * std::log(lambda) / std::log(2.0);
  }
  return s;
}

double entropy_of(const GridGeometry& geometry, const Eigen::VectorXcd& psi, Keep keep) {
  return entropy(reduced(geometry, psi, keep));
}

}  // namespace qwalk::dense
