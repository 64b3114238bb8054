#pragma once

#include <Eigen/Dense>

#include "dosc/fock.hpp"

namespace dosc {

struct SymmetricEigen {
  Eigen::VectorXd values;  // ascending
  Eigen::MatrixXd vectors; // orthonormal columns
};

/// Dense real symmetric eigensolver: Householder reduction to tridiagonal
/// form followed by implicit-shift QL. Only the lower triangle is read.
/// Throws ConvergenceError when an eigenvalue needs more than
/// `max_sweeps` QL iterations.
SymmetricEigen symmetric_eigensolve(const Eigen::MatrixXd& A, int max_sweeps = 60);

struct EigenDecomposition {
  int dim = 0;
  Eigen::VectorXd eigenvalues;     // ascending
  Eigen::MatrixXcd eigenvectors;   // orthonormal columns

  double max_residual(const OperatorMatrix& M) const;
  double orthonormality_defect() const;
};

inline constexpr double kResidualGate = 1e-9;      // relative to ||M||
inline constexpr double kOrthonormalityGate = 1e-10;

/// Full spectrum of a Hermitian matrix. The n x n problem M = A + iB is
/// embedded as the 2n x 2n real symmetric [[A, -B], [B, A]]; each
/// eigenvalue then appears twice and the complex eigenvectors are recovered
/// from each doubled cluster by pivoted Gram-Schmidt.
///
/// Throws ValidationError if M fails the Hermiticity gate and
/// ConvergenceError if QL stalls or the residual/orthonormality gates fail.
EigenDecomposition hermitian_eigensolve(const OperatorMatrix& M);

} // namespace dosc
