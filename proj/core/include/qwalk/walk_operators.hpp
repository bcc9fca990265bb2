#pragma once

#include <Eigen/Core>

#include "qwalk/grid_state.hpp"

namespace qwalk {

// Reflection axis |delta_ctr, u_c, t> with |delta_ctr> = -sin(delta)|0> + cos(delta)|1>.
struct OracleSpec {
  double delta = 0.0;
  Position target{};
};

// Throws std::invalid_argument if delta is outside [0, pi/2) or the target
// lies off the grid.
void validate_oracle(const GridGeometry& geometry, const OracleSpec& spec);

// psi <- psi - 2 <axis|psi> axis. Touches only the eight target amplitudes.
void apply_oracle(WalkState& state, const OracleSpec& spec);

// Grover coin -I + 2|u_c><u_c| on every (ctr, position) coin vector.
void apply_coin(WalkState& state);

// Flip-flop shift on the torus, applied to both control blocks.
void apply_shift(WalkState& state);

// |1><1| (x) S C  -  |0><0| (x) I.
void apply_conditional_walk(WalkState& state);

// One walk step U = W O.
void step(WalkState& state, const OracleSpec& spec);

// Explicit 8N x 8N matrix of U = W O assembled from the operator
// definitions (not from the in-place routines). Throws for N > 64.
Eigen::MatrixXcd build_dense_unitary(const GridGeometry& geometry, const OracleSpec& spec);

}  // namespace qwalk
