#pragma once

// Problem data for min a'x + c'z + x'Qx + constant subject to
// x_i (1 - z_i) = 0, sum z <= k, z binary; and the common solve report.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "stieltjes/types.hpp"

namespace stieltjes {

struct InstanceMetadata {
  std::string id;
  Index grid = 0;  // m for an m x m lattice, 0 otherwise
  double sigma2 = 0.0;
  double mu = 0.0;
  std::uint64_t seed = 0;
  Vector y;  // observations (empty when not generated from a lattice)
};

struct Instance {
  Matrix q;
  Vector a;
  Vector c;
  double constant = 0.0;
  Index k = 0;  // cardinality cap; k == n means inactive
  double big_m = 10.0;
  InstanceMetadata meta;

  Index n() const { return q.rows(); }
  bool cardinality_active() const { return k < n(); }
};

/// Validates dimensions, Stieltjes Q and 0 <= k <= n.  Throws std::invalid_argument.
void validate(const Instance& inst);

/// a'x + c'z + x'Qx + constant.
double objective_value(const Instance& inst, const Vector& x, const Vector& z);

struct SupportSolution {
  SupportSet support;
  Vector x;
  double value = 0.0;
};

/// Optimal continuous part for a fixed support: x_S = -1/2 Q_S^{-1} a_S,
/// value c(S) - 1/4 a_S' Q_S^{-1} a_S + constant.
SupportSolution evaluate_support(const Instance& inst, const SupportSet& s);

enum class SolveStatus { kOptimal, kMaxIter, kInfeasibleLike, kRoundLimit, kTimeLimit, kBoundOnly };

std::string to_string(SolveStatus status);

struct SolveReport {
  std::string instance_id;
  std::string model;
  SolveStatus status = SolveStatus::kMaxIter;
  double objective = std::numeric_limits<double>::quiet_NaN();  // best feasible value
  double bound = -std::numeric_limits<double>::infinity();       // valid lower bound
  double rel_gap = std::numeric_limits<double>::infinity();
  double time_s = 0.0;
  int rounds = 0;
  int cuts_added = 0;
  long nodes = 0;
  Vector x;
  Vector z;
  Vector relaxed_z;  // z of the last relaxation solved, when there is one
  Matrix w;
  double t = 0.0;
  std::vector<double> bound_history;
};

/// (upper - lower) / |upper|, with |upper| floored at 1e-9.
double relative_gap(double upper, double lower);

}  // namespace stieltjes
