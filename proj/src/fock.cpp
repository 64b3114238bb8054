#include "dosc/fock.hpp"

#include <cmath>

#include "dosc/errors.hpp"

namespace dosc {

namespace {

constexpr Complex kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

int mode_index(int n_x, int n_y) {
  const int q = n_x + n_y;
  return q * (q + 1) / 2 + n_x;
}

} // namespace

FockBasis::FockBasis(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 0) {
    throw ValidationError("Fock cutoff must be non-negative");
  }
  states_.reserve(static_cast<std::size_t>((cutoff + 1) * (cutoff + 2)));
  for (int q = 0; q <= cutoff; ++q) {
    for (int n_x = 0; n_x <= q; ++n_x) {
      for (int s = 1; s <= 2; ++s) {
        states_.push_back({n_x, q - n_x, s});
      }
    }
  }
}

int FockBasis::index(int n_x, int n_y, int s) const {
  if (n_x < 0 || n_y < 0 || n_x + n_y > cutoff_ || (s != 1 && s != 2)) {
    return -1;
  }
  return 2 * mode_index(n_x, n_y) + (s - 1);
}

std::vector<int> FockBasis::shells_up_to(int q_max) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i) {
    if (states_[static_cast<std::size_t>(i)].quanta() <= q_max) {
      out.push_back(i);
    }
  }
  return out;
}

LadderPair ladder_matrices(const FockBasis& basis) {
  const int n = basis.dim();
  LadderPair out{OperatorMatrix::Zero(n, n), OperatorMatrix::Zero(n, n)};
  for (int j = 0; j < n; ++j) {
    const FockState& st = basis.state(j);
    if (st.n_x > 0) {
      out.a_x(basis.index(st.n_x - 1, st.n_y, st.s), j) = std::sqrt(static_cast<double>(st.n_x));
    }
    if (st.n_y > 0) {
      out.a_y(basis.index(st.n_x, st.n_y - 1, st.s), j) = std::sqrt(static_cast<double>(st.n_y));
    }
  }
  return out;
}

ChiralPair chiral_ladders(const FockBasis& basis) {
  const LadderPair a = ladder_matrices(basis);
  return {kInvSqrt2 * (a.a_x - kI * a.a_y), kInvSqrt2 * (a.a_x + kI * a.a_y)};
}

NumberOps number_and_angular_ops(const FockBasis& basis, double omega_T, double hbar) {
  const ChiralPair c = chiral_ladders(basis);
  NumberOps ops;
  ops.N_r = c.a_r.adjoint() * c.a_r;
  ops.N_l = c.a_l.adjoint() * c.a_l;
  ops.L_z = hbar * (ops.N_r - ops.N_l);
  ops.H_ho = hbar * omega_T * (ops.N_r + ops.N_l + identity(basis));
  return ops;
}

PhaseSpaceOps position_momentum_ops(const FockBasis& basis, double delta_ref, double hbar) {
  if (!(delta_ref > 0.0)) {
    throw ValidationError("delta_ref must be positive");
  }
  const LadderPair a = ladder_matrices(basis);
  const double x_scale = delta_ref * kInvSqrt2;
  const Complex p_scale = kI * hbar * kInvSqrt2 / delta_ref;
  PhaseSpaceOps ops;
  ops.x = x_scale * (a.a_x + a.a_x.adjoint());
  ops.y = x_scale * (a.a_y + a.a_y.adjoint());
  ops.p_x = p_scale * (a.a_x.adjoint() - a.a_x);
  ops.p_y = p_scale * (a.a_y.adjoint() - a.a_y);
  return ops;
}

Eigen::Matrix2cd pauli_matrix(Pauli which) {
  Eigen::Matrix2cd s;
  switch (which) {
  case Pauli::X: s << 0.0, 1.0, 1.0, 0.0; break;
  case Pauli::Y: s << 0.0, -kI, kI, 0.0; break;
  case Pauli::Z: s << 1.0, 0.0, 0.0, -1.0; break;
  }
  return s;
}

OperatorMatrix spin_product(const Eigen::Matrix2cd& S, const OperatorMatrix& spatial) {
  // Basis index = 2 * mode + (s - 1); the spinor index runs fastest.
  const Eigen::Index n = spatial.rows();
  OperatorMatrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index sj = j % 2;
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index si = i % 2;
      const Eigen::Index mi = i - si;
      out(i, j) = S(si, sj) * spatial(mi + sj, j);
    }
  }
  return out;
}

OperatorMatrix spin_operator(const FockBasis& basis, const Eigen::Matrix2cd& S) {
  return spin_product(S, identity(basis));
}

OperatorMatrix spinor_projector(const FockBasis& basis, int s) {
  if (s != 1 && s != 2) {
    throw ValidationError("spinor component must be 1 or 2");
  }
  OperatorMatrix P = OperatorMatrix::Zero(basis.dim(), basis.dim());
  for (int i = 0; i < basis.dim(); ++i) {
    if (basis.state(i).s == s) {
      P(i, i) = 1.0;
    }
  }
  return P;
}

OperatorMatrix identity(const FockBasis& basis) {
  return OperatorMatrix::Identity(basis.dim(), basis.dim());
}

OperatorMatrix restrict_to(const OperatorMatrix& M, const std::vector<int>& indices) {
  const auto k = static_cast<Eigen::Index>(indices.size());
  OperatorMatrix out(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < k; ++i) {
      out(i, j) = M(indices[static_cast<std::size_t>(i)], indices[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

OperatorMatrix commutator(const OperatorMatrix& A, const OperatorMatrix& B) {
  return A * B - B * A;
}

double hermiticity_defect(const OperatorMatrix& M) {
  return (M - M.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const OperatorMatrix& M, double rel_tol) {
  if (M.size() == 0) {
    return true;
  }
  const double scale = M.cwiseAbs().maxCoeff();
  return hermiticity_defect(M) <= rel_tol * scale;
}

} // namespace dosc
