#include "stieltjes/simplex.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace stieltjes {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-10;

struct Tableau {
  Matrix a;
  Vector b;
  std::vector<Index> basis;
};

// Runs simplex iterations with cost `c` from a feasible basis.  Dantzig
// pricing, switching to Bland's rule after a run of degenerate pivots.
LpStatus iterate(Tableau& t, const Vector& c, int max_iter, int& iterations,
                 const std::vector<bool>& allowed) {
  const Index m = t.a.rows();
  const Index n = t.a.cols();
  int degenerate_run = 0;
  while (iterations < max_iter) {
    Matrix basis_matrix(m, m);
    Vector cb(m);
    for (Index r = 0; r < m; ++r) {
      basis_matrix.col(r) = t.a.col(t.basis[r]);
      cb(r) = c(t.basis[r]);
    }
    const Eigen::PartialPivLU<Matrix> lu(basis_matrix);
    const Vector xb = lu.solve(t.b);
    const Vector duals = lu.transpose().solve(cb);
    const Vector reduced = c - t.a.transpose() * duals;

    const bool bland = degenerate_run > 50;
    Index entering = -1;
    double best = -kCostTol;
    std::vector<bool> in_basis(static_cast<std::size_t>(n), false);
    for (Index r = 0; r < m; ++r) in_basis[t.basis[r]] = true;
    for (Index j = 0; j < n; ++j) {
      if (in_basis[j] || !allowed[j]) continue;
      if (reduced(j) < best) {
        entering = j;
        if (bland) break;
        best = reduced(j);
      }
    }
    if (entering < 0) return LpStatus::kOptimal;

    const Vector dir = lu.solve(t.a.col(entering));
    Index leaving = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (Index r = 0; r < m; ++r) {
      if (dir(r) > kPivotTol) {
        const double q = std::max(xb(r), 0.0) / dir(r);
        if (q < ratio - 1e-12 || (q <= ratio + 1e-12 && leaving >= 0 && t.basis[r] < t.basis[leaving])) {
          ratio = q;
          leaving = r;
        }
      }
    }
    if (leaving < 0) return LpStatus::kUnbounded;
    degenerate_run = ratio <= 1e-12 ? degenerate_run + 1 : 0;
    t.basis[leaving] = entering;
    ++iterations;
  }
  return LpStatus::kIterationLimit;
}

}  // namespace

LpResult solve_standard_lp(const Matrix& a, const Vector& b, const Vector& c, int max_iter) {
  const Index m = a.rows();
  const Index n = a.cols();
  if (b.size() != m || c.size() != n) throw std::invalid_argument("solve_standard_lp: shapes");

  // Phase 1 on [A I] with b >= 0.
  Tableau t;
  t.a = Matrix::Zero(m, n + m);
  t.b = b;
  for (Index r = 0; r < m; ++r) {
    const double sign = b(r) < 0.0 ? -1.0 : 1.0;
    t.a.row(r).head(n) = sign * a.row(r);
    t.a(r, n + r) = 1.0;
    t.b(r) *= sign;
    t.basis.push_back(n + r);
  }
  Vector phase1_cost = Vector::Zero(n + m);
  phase1_cost.tail(m).setOnes();
  std::vector<bool> allowed(static_cast<std::size_t>(n + m), true);

  LpResult result;
  LpStatus status = iterate(t, phase1_cost, max_iter, result.iterations, allowed);
  if (status == LpStatus::kIterationLimit) return result;

  auto basic_values = [&]() {
    Matrix basis_matrix(t.a.rows(), t.a.rows());
    for (Index r = 0; r < t.a.rows(); ++r) basis_matrix.col(r) = t.a.col(t.basis[r]);
    return Vector(basis_matrix.partialPivLu().solve(t.b));
  };
  {
    const Vector xb = basic_values();
    double infeasibility = 0.0;
    for (Index r = 0; r < t.a.rows(); ++r) {
      if (t.basis[r] >= n) infeasibility += xb(r);
    }
    if (infeasibility > 1e-7 * std::max(1.0, t.b.cwiseAbs().maxCoeff())) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
  }

  // Drive artificial variables out of the basis; drop redundant rows.
  for (Index r = 0; r < t.a.rows();) {
    if (t.basis[r] < n) {
      ++r;
      continue;
    }
    Matrix basis_matrix(t.a.rows(), t.a.rows());
    for (Index k = 0; k < t.a.rows(); ++k) basis_matrix.col(k) = t.a.col(t.basis[k]);
    const Eigen::PartialPivLU<Matrix> lu(basis_matrix);
    const Matrix tableau_row = lu.solve(t.a.leftCols(n)).row(r);
    Index pivot = -1;
    for (Index j = 0; j < n; ++j) {
      if (std::find(t.basis.begin(), t.basis.end(), j) != t.basis.end()) continue;
      if (std::abs(tableau_row(0, j)) > 1e-7) {
        pivot = j;
        break;
      }
    }
    if (pivot >= 0) {
      t.basis[r] = pivot;
      ++r;
    } else {
      // Redundant row: remove it together with its artificial column's basis slot.
      Matrix reduced_a(t.a.rows() - 1, t.a.cols());
      Vector reduced_b(t.a.rows() - 1);
      for (Index k = 0, out = 0; k < t.a.rows(); ++k) {
        if (k == r) continue;
        reduced_a.row(out) = t.a.row(k);
        reduced_b(out) = t.b(k);
        ++out;
      }
      t.a = std::move(reduced_a);
      t.b = std::move(reduced_b);
      t.basis.erase(t.basis.begin() + r);
    }
  }

  Vector cost = Vector::Zero(n + m);
  cost.head(n) = c;
  for (Index j = n; j < n + m; ++j) allowed[j] = false;
  status = iterate(t, cost, max_iter, result.iterations, allowed);
  result.status = status;
  if (status != LpStatus::kOptimal) return result;

  const Vector xb = basic_values();
  result.x = Vector::Zero(n);
  for (Index r = 0; r < t.a.rows(); ++r) {
    if (t.basis[r] < n) result.x(t.basis[r]) = std::max(xb(r), 0.0);
  }
  result.objective = c.dot(result.x);
  return result;
}

}  // namespace stieltjes
