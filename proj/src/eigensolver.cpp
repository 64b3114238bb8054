#include "dosc/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "dosc/errors.hpp"

namespace dosc {

namespace {

using Eigen::Index;

// Householder reduction of the symmetric matrix held in V (lower triangle)
// to tridiagonal form. On return d holds the diagonal, e the subdiagonal in
// e(1..n-1), and V the accumulated orthogonal transformation.
void tridiagonalize(Eigen::MatrixXd& V, Eigen::VectorXd& d, Eigen::VectorXd& e) {
  const Index n = V.rows();
  d = V.row(n - 1).transpose();
  e = Eigen::VectorXd::Zero(n);

  for (Index i = n - 1; i > 0; --i) {
    const double scale = d.head(i).cwiseAbs().sum();
    double h = 0.0;
    if (scale == 0.0) {
      e(i) = d(i - 1);
      for (Index j = 0; j < i; ++j) {
        d(j) = V(i - 1, j);
        V(i, j) = 0.0;
        V(j, i) = 0.0;
      }
    } else {
      d.head(i) /= scale;
      h = d.head(i).squaredNorm();
      double f = d(i - 1);
      double g = std::sqrt(h);
      if (f > 0) {
        g = -g;
      }
      e(i) = scale * g;
      h -= f * g;
      d(i - 1) = f - g;

      // e = A d on the leading i x i block, with A stored in the lower triangle.
      for (Index j = 0; j < i; ++j) {
        V(j, i) = d(j);
      }
      e.head(i).noalias() = V.topLeftCorner(i, i).selfadjointView<Eigen::Lower>() * d.head(i);
      e.head(i) /= h;
      f = e.head(i).dot(d.head(i));
      const double hh = f / (h + h);
      e.head(i) -= hh * d.head(i);
      V.topLeftCorner(i, i).selfadjointView<Eigen::Lower>().rankUpdate(d.head(i), e.head(i), -1.0);
      for (Index j = 0; j < i; ++j) {
        d(j) = V(i - 1, j);
        V(i, j) = 0.0;
      }
    }
    d(i) = h;
  }

  // Accumulate transformations.
  for (Index i = 0; i < n - 1; ++i) {
    V(n - 1, i) = V(i, i);
    V(i, i) = 1.0;
    const double h = d(i + 1);
    if (h != 0.0) {
      const Index k = i + 1;
      d.head(k) = V.col(i + 1).head(k) / h;
      const Eigen::VectorXd g = V.topLeftCorner(k, k).transpose() * V.col(i + 1).head(k);
      V.topLeftCorner(k, k).noalias() -= d.head(k) * g.transpose();
    }
    V.col(i + 1).head(i + 1).setZero();
  }
  d = V.row(n - 1).transpose();
  V.row(n - 1).setZero();
  V(n - 1, n - 1) = 1.0;
  e(0) = 0.0;
}

// Implicit QL on the tridiagonal (d, e), accumulating rotations into V.
void tridiagonal_ql(Eigen::MatrixXd& V, Eigen::VectorXd& d, Eigen::VectorXd& e, int max_sweeps) {
  const Index n = d.size();
  for (Index i = 1; i < n; ++i) {
    e(i - 1) = e(i);
  }
  e(n - 1) = 0.0;

  double shift_total = 0.0;
  double tst1 = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (Index l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d(l)) + std::abs(e(l)));
    Index m = l;
    while (m < n && std::abs(e(m)) > eps * tst1) {
      ++m;
    }
    if (m == n) {
      m = n - 1;
    }
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > max_sweeps) {
          throw ConvergenceError("tridiagonal QL did not converge for eigenvalue " + std::to_string(l));
        }
        double g = d(l);
        double p = (d(l + 1) - g) / (2.0 * e(l));
        double r = std::hypot(p, 1.0);
        if (p < 0) {
          r = -r;
        }
        d(l) = e(l) / (p + r);
        d(l + 1) = e(l) * (p + r);
        const double dl1 = d(l + 1);
        double h = g - d(l);
        d.segment(l + 2, n - l - 2).array() -= h;
        shift_total += h;

        p = d(m);
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e(l + 1);
        double s = 0.0, s2 = 0.0;
        for (Index i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e(i);
          h = c * p;
          r = std::hypot(p, e(i));
          e(i + 1) = s * r;
          s = e(i) / r;
          c = p / r;
          p = c * d(i) - s * g;
          d(i + 1) = h + s * (c * g + s * d(i));

          double* vi = V.col(i).data();
          double* vi1 = V.col(i + 1).data();
          for (Index k = 0; k < n; ++k) {
            const double t = vi1[k];
            vi1[k] = s * vi[k] + c * t;
            vi[k] = c * vi[k] - s * t;
          }
        }
        p = -s * s2 * c3 * el1 * e(l) / dl1;
        e(l) = s * p;
        d(l) = c * p;
      } while (std::abs(e(l)) > eps * tst1);
    }
    d(l) += shift_total;
    e(l) = 0.0;
  }
}

Eigen::MatrixXd real_embedding(const OperatorMatrix& M) {
  const Index n = M.rows();
  Eigen::MatrixXd S(2 * n, 2 * n);
  const Eigen::MatrixXd A = M.real();
  const Eigen::MatrixXd B = M.imag();
  S.topLeftCorner(n, n) = A;
  S.topRightCorner(n, n) = -B;
  S.bottomLeftCorner(n, n) = B;
  S.bottomRightCorner(n, n) = A;
  return S;
}

} // namespace

SymmetricEigen symmetric_eigensolve(const Eigen::MatrixXd& A, int max_sweeps) {
  const Index n = A.rows();
  if (A.cols() != n) {
    throw ValidationError("symmetric_eigensolve needs a square matrix");
  }
  SymmetricEigen out;
  if (n == 0) {
    return out;
  }
  Eigen::MatrixXd V = A;
  Eigen::VectorXd d, e;
  if (n == 1) {
    out.values = A.diagonal();
    out.vectors = Eigen::MatrixXd::Identity(1, 1);
    return out;
  }
  tridiagonalize(V, d, e);
  tridiagonal_ql(V, d, e, max_sweeps);

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return d(a) < d(b); });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.values(k) = d(order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = V.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

double EigenDecomposition::max_residual(const OperatorMatrix& M) const {
  if (dim == 0) {
    return 0.0;
  }
  const Eigen::MatrixXcd R = M * eigenvectors - eigenvectors * eigenvalues.cast<Complex>().asDiagonal();
  return R.colwise().norm().maxCoeff();
}

double EigenDecomposition::orthonormality_defect() const {
  if (dim == 0) {
    return 0.0;
  }
  const Eigen::MatrixXcd G = eigenvectors.adjoint() * eigenvectors - Eigen::MatrixXcd::Identity(dim, dim);
  return G.cwiseAbs().maxCoeff();
}

EigenDecomposition hermitian_eigensolve(const OperatorMatrix& M) {
  const Index n = M.rows();
  if (M.cols() != n) {
    throw ValidationError("hermitian_eigensolve needs a square matrix");
  }
  if (!is_hermitian(M)) {
    throw ValidationError("hermitian_eigensolve: matrix fails the Hermiticity gate (defect " +
                          std::to_string(hermiticity_defect(M)) + ")");
  }
  EigenDecomposition out;
  out.dim = static_cast<int>(n);
  if (n == 0) {
    return out;
  }

  const SymmetricEigen real = symmetric_eigensolve(real_embedding(M));
  const double norm = std::max(real.values.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  const double group_tol = 1e-10 * std::max(norm, 1.0);

  // Each complex eigenvector z = u + iv shows up as (u, v) and (-v, u);
  // within a cluster of 2k real vectors exactly k complex directions survive.
  std::vector<Eigen::VectorXcd> picked;
  picked.reserve(static_cast<std::size_t>(n));
  const Index total = 2 * n;
  Index start = 0;
  while (start < total) {
    Index stop = start + 1;
    while (stop < total && real.values(stop) - real.values(stop - 1) <= group_tol) {
      ++stop;
    }
    const Index size = stop - start;
    if (size % 2 != 0) {
      throw ConvergenceError("eigenvalue doubling broken in real embedding near " +
                             std::to_string(real.values(start)));
    }
    std::vector<Eigen::VectorXcd> candidates;
    candidates.reserve(static_cast<std::size_t>(size));
    for (Index k = start; k < stop; ++k) {
      const auto col = real.vectors.col(k);
      Eigen::VectorXcd z(n);
      z.real() = col.head(n);
      z.imag() = col.tail(n);
      candidates.push_back(std::move(z));
    }
    const Index want = size / 2;
    const std::size_t cluster_begin = picked.size();
    for (Index chosen = 0; chosen < want; ++chosen) {
      std::size_t best = 0;
      double best_norm = -1.0;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        const double nr = candidates[c].norm();
        if (nr > best_norm) {
          best_norm = nr;
          best = c;
        }
      }
      // The doubled vectors form a tight frame with constant 2, so the best
      // residual is at least sqrt(2 / (k + 1)) in exact arithmetic.
      if (best_norm < 1e-4) {
        throw ConvergenceError("could not recover complex eigenvectors from the real embedding");
      }
      Eigen::VectorXcd q = candidates[best] / best_norm;
      candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best));
      // re-orthogonalize against this cluster's earlier picks
      for (std::size_t k = cluster_begin; k < picked.size(); ++k) {
        q -= picked[k].dot(q) * picked[k];
      }
      q.normalize();
      for (auto& c : candidates) {
        c -= q.dot(c) * q;
      }
      picked.push_back(std::move(q));
    }
    start = stop;
  }

  std::vector<double> values(picked.size());
  for (std::size_t k = 0; k < picked.size(); ++k) {
    values[k] = picked[k].dot(M * picked[k]).real();
  }
  std::vector<std::size_t> order(picked.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  // Neighbouring levels split by less than ~eps ||M|| / 1e-10 leak into
  // each other's clusters, which leaves a small imaginary overlap between
  // the recovered vectors. Two Gram-Schmidt passes over spectral neighbours
  // remove it; the residual changes only by overlap * gap.
  const double mix_window = 1e-3 * std::max(norm, 1.0);
  std::vector<Eigen::VectorXcd> sorted(picked.size());
  std::vector<double> sorted_values(picked.size());
  for (std::size_t k = 0; k < picked.size(); ++k) {
    sorted[k] = std::move(picked[order[k]]);
    sorted_values[k] = values[order[k]];
  }
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = 1; k < sorted.size(); ++k) {
      for (std::size_t j = k; j-- > 0;) {
        if (sorted_values[k] - sorted_values[j] > mix_window) {
          break;
        }
        sorted[k] -= sorted[j].dot(sorted[k]) * sorted[j];
      }
      sorted[k].normalize();
    }
  }
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    sorted_values[k] = sorted[k].dot(M * sorted[k]).real();
  }
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sorted_values[a] < sorted_values[b]; });

  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = sorted_values[order[static_cast<std::size_t>(k)]];
    out.eigenvectors.col(k) = sorted[order[static_cast<std::size_t>(k)]];
  }

  const double residual = out.max_residual(M);
  if (residual > kResidualGate * std::max(norm, 1e-300)) {
    throw ConvergenceError("eigen residual gate failed: " + std::to_string(residual));
  }
  const double ortho = out.orthonormality_defect();
  if (ortho > kOrthonormalityGate) {
    throw ConvergenceError("eigenvector orthonormality gate failed: " + std::to_string(ortho));
  }
  return out;
}

} // namespace dosc
