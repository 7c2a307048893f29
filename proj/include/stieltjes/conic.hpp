#pragma once

// First-order conic solver for
//
//   minimize    c'x + offset
//   subject to  A x + s = b,   s in K = K_1 x ... x K_m
//
// with K_i a zero cone, nonnegative orthant, second-order cone
// {(t, u) : |u| <= t} or PSD cone.  The dual is
//   maximize -b'y + offset  subject to  A'y + c = 0,  y in K*.
//
// PSD blocks of matrix dimension s occupy s(s+1)/2 rows holding the lower
// triangle column by column, (0,0), (1,0), ..., (s-1,0), (1,1), (2,1), ...,
// with off-diagonal entries multiplied by sqrt(2) so that the Euclidean inner
// product of packed vectors equals the trace inner product of the matrices.

#include <Eigen/SparseCore>

#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "stieltjes/types.hpp"

namespace stieltjes {

enum class ConeKind { kZero, kNonneg, kSecondOrder, kPsd };

struct Cone {
  ConeKind kind;
  Index size;  // PSD: matrix dimension; otherwise number of rows

  Index rows() const { return kind == ConeKind::kPsd ? size * (size + 1) / 2 : size; }
};

inline constexpr double kSqrt2 = 1.41421356237309504880;

Index psd_packed_size(Index dim);
/// Row offset of entry (i, j) inside a packed PSD block (either triangle).
Index psd_packed_index(Index dim, Index i, Index j);
Vector pack_psd(const Matrix& m);
Matrix unpack_psd(const Eigen::Ref<const Vector>& packed, Index dim);

/// Euclidean projection onto one cone block (in packed coordinates for PSD).
void project_onto_cone(const Cone& cone, Eigen::Ref<Vector> v);

struct ConicProblem {
  Index num_vars = 0;
  Vector objective;
  double offset = 0.0;
  std::vector<Eigen::Triplet<double>> entries;  // (row, col, value) of A
  Vector rhs;
  std::vector<Cone> cones;

  Index num_rows() const;
  /// Throws std::invalid_argument when sizes are inconsistent.
  void validate() const;
  Eigen::SparseMatrix<double> matrix() const;
};

/// Sparse linear inequality sum_j coeffs_j x_j <= rhs.
struct LinearRow {
  std::vector<std::pair<Index, double>> coeffs;
  double rhs = 0.0;
};

/// Appends `rows` as one nonnegative cone block (nothing if empty).
ConicProblem add_cut_rows(const ConicProblem& problem, const std::vector<LinearRow>& rows);

struct ConicSettings {
  double tol = 1e-6;
  int max_iter = 50000;
  double rho = 0.1;
  double sigma = 1e-6;
  double alpha = 1.6;
  int check_every = 25;
  bool adaptive_rho = true;
  bool equilibrate = true;
  double infeasibility_tol = 1e-6;
  std::ostream* trace = nullptr;  // residuals at every check when set
};

enum class ConicStatus { kOptimal, kMaxIter, kInfeasibleLike };
enum class Certificate { kNone, kPrimalInfeasible, kUnbounded };

std::string to_string(ConicStatus status);

struct ConicSolution {
  Vector x;
  Vector s;
  Vector y;
  double objective = 0.0;       // c'x + offset
  double dual_objective = 0.0;  // -b'y + offset
  double primal_residual = 0.0; // |Ax + s - b|_inf / (1 + max(|Ax|, |s|, |b|))
  double dual_residual = 0.0;   // |A'y + c|_inf / (1 + max(|A'y|, |c|))
  double gap = 0.0;             // |c'x + b'y| / (1 + |c'x| + |b'y|)
  ConicStatus status = ConicStatus::kMaxIter;
  Certificate certificate = Certificate::kNone;
  int iterations = 0;
  double rho = 0.0;  // step size in use at termination
};

/// Initial iterate in original (unscaled) coordinates.
struct WarmStart {
  Vector x;
  Vector s;
  Vector y;
  double rho = 0.0;  // initial step size when positive
};

/// Carries x, s, y and the step size over and pads s and y with zeros for
/// `extra_rows`.
WarmStart pad_warm_start(const ConicSolution& previous, Index extra_rows);

/// As above, with the slacks of the appended rows set to max(rhs - a'x, 0).
WarmStart pad_warm_start(const ConicSolution& previous, const std::vector<LinearRow>& rows);

/// ADMM solver owning the scaled data and the factorization of
/// sigma I + A' R A.  The factorization is reused across solves and is
/// refreshed only when the step size rho is adapted.
class ConicSolver {
 public:
  explicit ConicSolver(ConicProblem problem, ConicSettings settings = {});
  ~ConicSolver();
  ConicSolver(ConicSolver&&) noexcept;
  ConicSolver& operator=(ConicSolver&&) noexcept;

  /// Replaces b; A, c and the cones are unchanged so nothing is refactored.
  void update_rhs(const Vector& rhs);
  ConicSolution solve(const WarmStart* warm = nullptr);

  const ConicProblem& problem() const;
  const ConicSettings& settings() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

ConicSolution solve(const ConicProblem& problem, const ConicSettings& settings = {},
                    const WarmStart* warm = nullptr);

/// Plain-text dump: header "vars rows", objective "c j value" lines, cones
/// "cone kind size", then one "i j value" line per entry of A and
/// "b i value" per right-hand side entry.
void write_problem_text(const ConicProblem& problem, std::ostream& out);

}  // namespace stieltjes
