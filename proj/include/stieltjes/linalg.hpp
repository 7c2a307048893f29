#pragma once

// Dense symmetric kernels: ordered Cholesky, principal-submatrix inverses,
// the bordered (rank-one) inverse identity and PSD projection.

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "stieltjes/errors.hpp"
#include "stieltjes/types.hpp"

namespace stieltjes {

/// Relative pivot tolerance shared by the factorizations below.
inline constexpr double kPivotTolerance = 1e-12;

/// Factor A = sum_k v_k v_k' where column k of `columns` is v_k and is
/// supported on {order[0], ..., order[k]}.
template <typename Scalar>
struct CholeskyFactor {
  std::vector<Index> order;
  MatrixX<Scalar> columns;

  Index dimension() const { return columns.rows(); }
  auto column(Index k) const { return columns.col(k); }
  MatrixX<Scalar> term(Index k) const {
    return columns.col(k) * columns.col(k).transpose();
  }
  MatrixX<Scalar> reconstruct() const {
    return columns * columns.transpose();
  }
};

template <typename Scalar>
struct BorderedInverse {
  MatrixX<Scalar> inverse;  // (A v; v' d)^{-1}
  VectorX<Scalar> u;        // (-A^{-1} v; 1)
  Scalar scale;             // 1 / (d - v' A^{-1} v)
};

struct SymEig {
  Vector values;   // ascending
  Matrix vectors;  // orthonormal columns
};

bool is_permutation(std::span<const Index> order, Index n);

/// Ordered Cholesky in "upper" orientation: pivots are eliminated from the
/// last element of `order` backwards, so the factor is upper triangular when
/// rows and columns are listed in `order`.  For A = Q^{-1} the k-th column
/// squared is pinv(Q, S_k) - pinv(Q, S_{k-1}) with S_k the first k+1 entries
/// of `order`.
template <typename Derived>
CholeskyFactor<typename Derived::Scalar> cholesky_ordered(
    const Eigen::MatrixBase<Derived>& a, std::span<const Index> order) {
  using Scalar = typename Derived::Scalar;
  using std::sqrt;
  const Index n = a.rows();
  if (a.cols() != n || n < 1) {
    throw std::invalid_argument("cholesky_ordered expects a non-empty square matrix");
  }
  if (!is_permutation(order, n)) {
    throw std::invalid_argument("cholesky_ordered: order is not a permutation");
  }

  MatrixX<Scalar> work(n, n);
  for (Index c = 0; c < n; ++c) {
    for (Index r = c; r < n; ++r) {
      work(r, c) = a(order[r], order[c]);
    }
  }
  const Scalar max_diag = work.diagonal().cwiseAbs().maxCoeff();
  const Scalar threshold = Scalar(kPivotTolerance) * max_diag;

  MatrixX<Scalar> upper = MatrixX<Scalar>::Zero(n, n);
  for (Index p = n - 1; p >= 0; --p) {
    const Scalar pivot = work(p, p);
    if (!(pivot > threshold)) {
      throw NotPositiveDefinite("cholesky_ordered: pivot " + std::to_string(double(pivot)) +
                                " at position " + std::to_string(p));
    }
    const Scalar root = sqrt(pivot);
    upper(p, p) = root;
    if (p == 0) break;
    VectorX<Scalar> col = work.row(p).head(p).transpose() / root;
    upper.col(p).head(p) = col;
    work.topLeftCorner(p, p).template selfadjointView<Eigen::Lower>().rankUpdate(col, Scalar(-1));
  }

  CholeskyFactor<Scalar> factor;
  factor.order.assign(order.begin(), order.end());
  factor.columns = MatrixX<Scalar>::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    for (Index r = 0; r <= k; ++r) {
      factor.columns(order[r], k) = upper(r, k);
    }
  }
  return factor;
}

/// pinv(Q, S): inverse of the principal submatrix Q_S embedded in n x n zeros.
template <typename Derived>
MatrixX<typename Derived::Scalar> sub_pseudoinverse(const Eigen::MatrixBase<Derived>& q,
                                                    const SupportSet& s) {
  using Scalar = typename Derived::Scalar;
  const Index n = q.rows();
  MatrixX<Scalar> result = MatrixX<Scalar>::Zero(n, n);
  const Index m = s.size();
  if (m == 0) return result;

  MatrixX<Scalar> sub(m, m);
  for (Index c = 0; c < m; ++c) {
    for (Index r = 0; r < m; ++r) {
      sub(r, c) = q(s.members()[r], s.members()[c]);
    }
  }
  std::vector<Index> natural(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) natural[i] = i;
  // sub = U U' with U upper triangular, so sub^{-1} = U^{-T} U^{-1}.
  const auto factor = cholesky_ordered(sub, natural);
  const MatrixX<Scalar> upper_inv =
      factor.columns.template triangularView<Eigen::Upper>().solve(MatrixX<Scalar>::Identity(m, m));
  const MatrixX<Scalar> inv = upper_inv.transpose() * upper_inv;
  for (Index c = 0; c < m; ++c) {
    for (Index r = 0; r < m; ++r) {
      result(s.members()[r], s.members()[c]) = Scalar(0.5) * (inv(r, c) + inv(c, r));
    }
  }
  return result;
}

/// Inverse of the bordered matrix (A v; v' d) from A^{-1}, together with the
/// rank-one difference to the zero-padded A^{-1}: scale * u u'.
template <typename DerivedA, typename DerivedV>
BorderedInverse<typename DerivedA::Scalar> rank_one_inverse_update(
    const Eigen::MatrixBase<DerivedA>& a_inv, const Eigen::MatrixBase<DerivedV>& v,
    typename DerivedA::Scalar d) {
  using Scalar = typename DerivedA::Scalar;
  const Index m = a_inv.rows();
  const VectorX<Scalar> w = a_inv * v;
  const Scalar schur = d - v.dot(w);
  if (!(schur > Scalar(kPivotTolerance))) {
    throw SchurNotPositive("rank_one_inverse_update: Schur complement " +
                           std::to_string(double(schur)));
  }
  BorderedInverse<Scalar> out;
  out.scale = Scalar(1) / schur;
  out.u.resize(m + 1);
  out.u.head(m) = -w;
  out.u(m) = Scalar(1);
  out.inverse = MatrixX<Scalar>::Zero(m + 1, m + 1);
  out.inverse.topLeftCorner(m, m) = a_inv;
  out.inverse.noalias() += out.scale * out.u * out.u.transpose();
  return out;
}

/// Symmetric eigendecomposition, eigenvalues ascending.  Throws NoConvergence.
SymEig sym_eig(const Matrix& a);

/// Nearest PSD matrix in Frobenius norm.
Matrix psd_project(const Matrix& a);

double min_eigenvalue(const Matrix& a);

/// (A + A') / 2
Matrix symmetrize(const Matrix& a);

}  // namespace stieltjes
