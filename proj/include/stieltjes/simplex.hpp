#pragma once

// Dense two-phase primal simplex for  min c'x  s.t.  A x = b, x >= 0.
// Intended for verification LPs with few rows and many columns.

#include "stieltjes/types.hpp"

namespace stieltjes {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  Vector x;
  double objective = 0.0;
  int iterations = 0;
};

LpResult solve_standard_lp(const Matrix& a, const Vector& b, const Vector& c,
                           int max_iter = 200000);

}  // namespace stieltjes
