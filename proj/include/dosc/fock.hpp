#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace dosc {

using Complex = std::complex<double>;
/// Dense complex operator on a FockBasis.
using OperatorMatrix = Eigen::MatrixXcd;

struct FockState {
  int n_x = 0;
  int n_y = 0;
  int s = 1; // spinor component, 1 (upper) or 2 (lower)

  int quanta() const { return n_x + n_y; }
  friend bool operator==(const FockState&, const FockState&) = default;
};

/// Two-mode oscillator states with n_x + n_y <= cutoff, tensored with a
/// two-component spinor. Ordered by total quanta, then n_x, then s.
class FockBasis {
public:
  explicit FockBasis(int cutoff);

  int cutoff() const { return cutoff_; }
  int dim() const { return static_cast<int>(states_.size()); }
  const std::vector<FockState>& states() const { return states_; }
  const FockState& state(int i) const { return states_[static_cast<std::size_t>(i)]; }

  /// Index of (n_x, n_y, s); -1 when outside the truncation.
  int index(int n_x, int n_y, int s) const;

  /// Indices of states with total quanta <= q_max, in basis order.
  std::vector<int> shells_up_to(int q_max) const;

private:
  int cutoff_;
  std::vector<FockState> states_;
};

struct LadderPair {
  OperatorMatrix a_x;
  OperatorMatrix a_y;
};

struct ChiralPair {
  OperatorMatrix a_r; // (a_x - i a_y) / sqrt 2
  OperatorMatrix a_l; // (a_x + i a_y) / sqrt 2
};

struct NumberOps {
  OperatorMatrix N_r;
  OperatorMatrix N_l;
  OperatorMatrix L_z;  // hbar (N_r - N_l)
  OperatorMatrix H_ho; // hbar omega_T (N_r + N_l + 1)
};

struct PhaseSpaceOps {
  OperatorMatrix x;
  OperatorMatrix y;
  OperatorMatrix p_x;
  OperatorMatrix p_y;
};

LadderPair ladder_matrices(const FockBasis& basis);
ChiralPair chiral_ladders(const FockBasis& basis);
NumberOps number_and_angular_ops(const FockBasis& basis, double omega_T, double hbar = 1.0);
PhaseSpaceOps position_momentum_ops(const FockBasis& basis, double delta_ref, double hbar = 1.0);

enum class Pauli { X, Y, Z };

Eigen::Matrix2cd pauli_matrix(Pauli which);

/// (S tensor 1) * spatial, for a spatial operator that acts as the
/// identity on the spinor index. O(dim^2).
OperatorMatrix spin_product(const Eigen::Matrix2cd& S, const OperatorMatrix& spatial);

/// S tensor 1 on the full basis.
OperatorMatrix spin_operator(const FockBasis& basis, const Eigen::Matrix2cd& S);

/// Projector onto one spinor component (s = 1 or 2).
OperatorMatrix spinor_projector(const FockBasis& basis, int s);

OperatorMatrix identity(const FockBasis& basis);

/// Sub-block of M on the given basis indices (rows and columns).
OperatorMatrix restrict_to(const OperatorMatrix& M, const std::vector<int>& indices);

OperatorMatrix commutator(const OperatorMatrix& A, const OperatorMatrix& B);

/// max |M - M^dagger|
double hermiticity_defect(const OperatorMatrix& M);
bool is_hermitian(const OperatorMatrix& M, double rel_tol = 1e-12);

} // namespace dosc
