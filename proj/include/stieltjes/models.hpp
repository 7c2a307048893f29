#pragma once

// The three formulations compared on lattice instances: the perspective
// relaxation with big-M bounds (pers-c), its branch-and-bound closure
// (pers-b), and the semidefinite master with polymatroid cutting planes
// (poly); plus exhaustive enumeration as an exact oracle.

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "stieltjes/conic.hpp"
#include "stieltjes/instance.hpp"
#include "stieltjes/types.hpp"

namespace stieltjes {

// ---------------------------------------------------------------- pers-c

/// Variables (x, z, tau, tau0).  The diagonal part D = diag(1/u), u = Q^{-1} e,
/// gets perspective terms D_ii tau_i with x_i^2 <= tau_i z_i; the remainder
/// P = Q - D is PSD with P u = 0 and enters as x'Px <= tau0.
struct PersLayout {
  Index n = 0;
  Index x(Index i) const { return i; }
  Index z(Index i) const { return n + i; }
  Index tau(Index i) const { return 2 * n + i; }
  Index tau0() const { return 3 * n; }
  Index num_vars() const { return 3 * n + 1; }
  Index lower_row(Index i) const { return z_bound_row + 2 * i + 1; }
  Index upper_row(Index i) const { return z_bound_row + 2 * i; }
  Index z_bound_row = 0;  // rows: z_i <= hi_i, -z_i <= -lo_i interleaved
};

struct PersModel {
  ConicProblem problem;
  PersLayout layout;
};

PersModel build_pers_c(const Instance& inst);

/// Right-hand side of `model` with lo <= z <= hi.
Vector pers_rhs_with_bounds(const PersModel& model, const Vector& lo, const Vector& hi);

// ------------------------------------------------------------------ poly

struct PolyOptions {
  bool equalities = true;  // sum_j Q_ij W_ij = z_i
  bool nonneg_w = true;    // W >= 0
};

/// Variables (x, z, t, W) with W stored once per pair i <= j, so symmetry
/// holds by construction.
struct PolyLayout {
  Index n = 0;
  Index x(Index i) const { return i; }
  Index z(Index i) const { return n + i; }
  Index t() const { return 2 * n; }
  Index w(Index i, Index j) const;
  Index num_vars() const { return 2 * n + 1 + n * (n + 1) / 2; }
};

struct PolyModel {
  ConicProblem problem;
  PolyLayout layout;
};

PolyModel build_poly_master(const Instance& inst, const PolyOptions& options = {});

Matrix extract_w(const PolyLayout& layout, const Vector& v);

// ------------------------------------------------------------ solvers

struct CuttingPlaneOptions {
  double tol_round = 1e-3;
  int max_rounds = 50;
  double cut_tol = 1e-6;
  double time_limit = std::numeric_limits<double>::infinity();
  ConicSettings conic;
  /// Intermediate masters are solved to max(conic.tol, round_conic_tol);
  /// the last master is then re-solved to conic.tol for the reported bound.
  double round_conic_tol = 1e-4;
  PolyOptions master;
  /// Start from the whole cut separated at the pers-c relaxation point
  /// rather than from an empty cut pool.
  bool seed_cut = true;
  std::ostream* trace = nullptr;  // one line per round when set
};

SolveReport cutting_plane_solve(const Instance& inst, const CuttingPlaneOptions& options = {});

/// Root perspective relaxation; the incumbent comes from rounding plus local search.
SolveReport solve_pers_c(const Instance& inst, const ConicSettings& settings = {});

inline constexpr Index kMaxEnumerationSize = 22;

/// Depth-first over supports with bordered inverse updates.
SolveReport exact_enumerate(const Instance& inst);

struct BranchAndBoundOptions {
  double time_limit = 60.0;
  double gap_tol = 1e-6;
  long max_nodes = 1000000;
  ConicSettings conic;
};

SolveReport branch_and_bound(const Instance& inst, const BranchAndBoundOptions& options = {});

/// Support of the (at most k) largest entries of z above 0.5.
SupportSet round_indicator(const Vector& z, Index k);

/// First-improvement local search over add, drop and swap moves.
SupportSolution improve_support(const Instance& inst, const SupportSet& start, int max_passes = 20);

std::string results_csv_header();
std::string results_csv_row(const SolveReport& report);

}  // namespace stieltjes
