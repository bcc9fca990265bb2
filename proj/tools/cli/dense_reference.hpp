#pragma once

#include <Eigen/Core>

#include "qwalk/grid_state.hpp"

// Brute-force dense routines for small grids. They share no code path with
// the structured operators or the Gram-matrix reductions in the core library.
namespace qwalk::dense {

Eigen::VectorXcd to_vector(const WalkState& state);
WalkState from_vector(const GridGeometry& geometry, const Eigen::VectorXcd& psi);

// Which registers survive a partial trace.
struct Keep {
  bool control = false;
  bool coin = false;
  bool position = false;
};

// rho_A = M M^dagger with M the amplitude matrix reshaped to (A, complement).
Eigen::MatrixXcd reduced(const GridGeometry& geometry, const Eigen::VectorXcd& psi, Keep keep);

// -sum lambda log2 lambda with eigenvalues from a full Hermitian eigensolve.
double entropy(const Eigen::MatrixXcd& rho);

double entropy_of(const GridGeometry& geometry, const Eigen::VectorXcd& psi, Keep keep);

}  // namespace qwalk::dense
