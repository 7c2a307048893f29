#include "stieltjes/instance.hpp"

#include <cmath>
#include <stdexcept>

#include "stieltjes/linalg.hpp"
#include "stieltjes/switching.hpp"

namespace stieltjes {

void validate(const Instance& inst) {
  const Index n = inst.n();
  if (n < 1 || inst.q.cols() != n) throw std::invalid_argument("instance: Q must be square");
  if (inst.a.size() != n || inst.c.size() != n) throw std::invalid_argument("instance: a, c size");
  if (inst.k < 0 || inst.k > n) throw std::invalid_argument("instance: k outside [0, n]");
  if (!is_stieltjes(inst.q)) throw std::invalid_argument("instance: Q is not Stieltjes");
  if (!(inst.big_m > 0.0)) throw std::invalid_argument("instance: big-M must be positive");
}

double objective_value(const Instance& inst, const Vector& x, const Vector& z) {
  return inst.a.dot(x) + inst.c.dot(z) + x.dot(inst.q * x) + inst.constant;
}

SupportSolution evaluate_support(const Instance& inst, const SupportSet& s) {
  SupportSolution out{s, Vector::Zero(inst.n()), inst.constant};
  if (s.empty()) return out;
  const Matrix w = sub_pseudoinverse(inst.q, s);
  out.x = -0.5 * w * inst.a;
  double linear = 0.0;
  for (Index i : s) linear += inst.c(i);
  out.value = linear - 0.25 * inst.a.dot(w * inst.a) + inst.constant;
  return out;
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kMaxIter:
      return "max_iter";
    case SolveStatus::kInfeasibleLike:
      return "infeasible_like";
    case SolveStatus::kRoundLimit:
      return "round_limit";
    case SolveStatus::kTimeLimit:
      return "time_limit";
    case SolveStatus::kBoundOnly:
      return "bound_only";
  }
  return "unknown";
}

double relative_gap(double upper, double lower) {
  if (!std::isfinite(upper) || !std::isfinite(lower)) return std::numeric_limits<double>::infinity();
  return (upper - lower) / std::max(std::abs(upper), 1e-9);
}

}  // namespace stieltjes
