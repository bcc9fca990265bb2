#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace qwalk {

using Complex = std::complex<double>;

// Coin basis ordering {left, right, down, up}.
enum class Coin : int { Left = 0, Right = 1, Down = 2, Up = 3 };

inline constexpr int kCoinDim = 4;
inline constexpr int kControlDim = 2;

struct Position {
  int x = 0;
  int y = 0;

  friend bool operator==(const Position&, const Position&) = default;
};

// Square torus of side L = 2^(n/2) holding N = 2^n positions.
class GridGeometry {
 public:
  // Throws std::invalid_argument for odd or out-of-range qubit counts.
  explicit GridGeometry(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  int side() const { return side_; }
  std::size_t n_positions() const { return n_positions_; }
  std::size_t state_size() const { return 8 * n_positions_; }

  bool contains(Position p) const {
    return p.x >= 0 && p.y >= 0 && p.x < side_ && p.y < side_;
  }
  std::size_t position_index(Position p) const {
    return static_cast<std::size_t>(p.y) * side_ + p.x;
  }
  // Flat layout: ctr*4N + coin*N + y*L + x (position fastest).
  std::size_t index(int ctr, int coin, Position p) const {
    return (static_cast<std::size_t>(ctr) * kCoinDim + coin) * n_positions_ +
           position_index(p);
  }

  friend bool operator==(const GridGeometry& a, const GridGeometry& b) {
    return a.n_qubits_ == b.n_qubits_;
  }

 private:
  int n_qubits_;
  int side_;
  std::size_t n_positions_;
};

// Pure state over control (x) coin (x) position.
class WalkState {
 public:
  explicit WalkState(GridGeometry geometry);

  const GridGeometry& geometry() const { return geometry_; }

  std::span<Complex> amplitudes() { return amplitudes_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }

  Complex& at(int ctr, int coin, Position p) {
    return amplitudes_[geometry_.index(ctr, coin, p)];
  }
  Complex at(int ctr, int coin, Position p) const {
    return amplitudes_[geometry_.index(ctr, coin, p)];
  }

  // Contiguous L x L plane for one (ctr, coin) pair.
  std::span<Complex> block(int ctr, int coin) {
    return std::span<Complex>(amplitudes_).subspan(
        (static_cast<std::size_t>(ctr) * kCoinDim + coin) * geometry_.n_positions(),
        geometry_.n_positions());
  }
  std::span<const Complex> block(int ctr, int coin) const {
    return std::span<const Complex>(amplitudes_).subspan(
        (static_cast<std::size_t>(ctr) * kCoinDim + coin) * geometry_.n_positions(),
        geometry_.n_positions());
  }

  double norm_squared() const;
  double norm() const;

 private:
  GridGeometry geometry_;
  std::vector<Complex> amplitudes_;
};

// Small Hermitian reduced density matrix (dimension 2, 4 or 8).
struct DensityMatrix {
  Eigen::MatrixXcd entries;

  int dim() const { return static_cast<int>(entries.rows()); }
};

enum class Subsystem {
  Control,
  Coin,
  ControlCoin,
  Position,
  CoinPosition,
  ControlPosition,
};

// |1> (x) |u_c> (x) |u_p>.
WalkState make_initial_state(const GridGeometry& geometry);

// <psi| (I (x) I (x) |t><t|) |psi>.
double target_probability(const WalkState& state, Position target);

// Per-position probabilities, indexed by y*L + x.
std::vector<double> position_distribution(const WalkState& state);

// Partial trace onto control, coin or control+coin. Position-containing
// subsystems are rejected: their matrices are N-dimensional.
DensityMatrix reduced_density(const WalkState& state, Subsystem subsystem);

// Entropy in bits. Subsystems containing the position register are
// evaluated through their complement, which is exact for a pure state.
double subsystem_entropy(const WalkState& state, Subsystem subsystem);

// -sum(lambda log2 lambda). Throws std::domain_error when the trace is off
// by more than 1e-8 or an eigenvalue is below -1e-12.
double von_neumann_entropy(const DensityMatrix& rho);

// Eigenvalues (ascending) of a Hermitian density matrix.
Eigen::VectorXd density_eigenvalues(const DensityMatrix& rho);

// Traces a density matrix over qubits down to the ones in keep_mask.
// Qubit q corresponds to bit q of the basis index (bit 0 least significant).
DensityMatrix partial_trace_qubits(const DensityMatrix& rho, int n_qubits,
                                   unsigned keep_mask);

}  // namespace qwalk
