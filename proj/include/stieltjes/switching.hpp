#pragma once

// Stieltjes classification and the sign-switching transform x_i -> -x_i,
// Q_ij -> -Q_ij when exactly one of i, j is switched.

#include <variant>
#include <vector>

#include "stieltjes/types.hpp"

namespace stieltjes {

inline constexpr double kOffDiagonalTolerance = 1e-12;

/// Q symmetric, off-diagonals <= 1e-12 and lambda_min > 1e-10 * max diag.
bool is_stieltjes(const Matrix& q);

struct SwitchSet {
  SupportSet flips;

  Index dimension() const { return flips.dimension(); }
  bool flipped(Index i) const { return flips.contains(i); }
};

/// Cycle of vertices v0 - v1 - ... - v_{m-1} - v0 whose sign constraints
/// cannot be met simultaneously (odd number of positive entries).
struct SwitchInfeasible {
  std::vector<Index> cycle;
};

using SwitchResult = std::variant<SwitchSet, SwitchInfeasible>;

/// Two-colors the off-diagonal sign graph.  Per connected component the
/// smaller flip set is returned; on ties the component's lowest index stays
/// unflipped.
SwitchResult find_switch(const Matrix& q);

Matrix apply_switch(const Matrix& q, const SwitchSet& s);
Vector apply_switch(const Vector& x, const SwitchSet& s);

/// Number of positive off-diagonal entries along a closed cycle.
int positive_edges_on_cycle(const Matrix& q, const std::vector<Index>& cycle);

}  // namespace stieltjes
