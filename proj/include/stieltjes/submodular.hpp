#pragma once

// F(S) = c(S) + <Sigma, pinv(Q, S)> with Sigma <= 0 is submodular; this module
// evaluates it, its Lovasz extension, and minimizes it.

#include <optional>
#include <vector>

#include "stieltjes/instance.hpp"
#include "stieltjes/types.hpp"

namespace stieltjes {

class SetObjective {
 public:
  /// Throws std::invalid_argument if Sigma has a positive entry or shapes differ.
  SetObjective(Matrix q, Matrix sigma, Vector c);

  Index dimension() const { return q_.rows(); }
  const Matrix& q() const { return q_; }
  const Matrix& q_inv() const { return q_inv_; }
  const Matrix& sigma() const { return sigma_; }
  const Vector& c() const { return c_; }

  /// F(S_k) - F(S_{k-1}) along the chain S_k = {order[0..k]}.
  Vector chain_increments(const std::vector<Index>& order) const;

 private:
  Matrix q_;
  Matrix sigma_;
  Vector c_;
  Matrix q_inv_;
};

double theta_total(const SetObjective& obj, const SupportSet& s);

struct LovaszValue {
  double value = 0.0;
  Vector subgradient;  // greedy vertex of the base polytope, tight at z
};

LovaszValue lovasz_eval(const SetObjective& obj, const Vector& z);

struct SetMinimum {
  SupportSet set;
  double value = 0.0;
};

inline constexpr Index kMaxBruteForceDimension = 22;

/// Exact minimum over all 2^n sets; ties (1e-12 relative) go to the
/// lexicographically smallest member list.
SetMinimum sfm_bruteforce(const SetObjective& obj);

struct SfmOptions {
  int max_iter = 2000;
  double tol = 1e-9;
};

struct SfmResult {
  Vector z;                 // indicator of `set`
  SupportSet set;           // best chain set found (|set| <= k when capped)
  double value = 0.0;       // F(set)
  double lower_bound = 0.0; // certified lower bound on the (capped) minimum
  bool certified = false;   // value - lower_bound <= tol * max(1, |value|)
  int iterations = 0;
};

/// Conditional gradient on the min-norm base point with greedy linear
/// oracle; every greedy chain is scanned for the best set.  With a
/// cardinality cap the bound comes from the Lagrangian in the cap.
SfmResult sfm_minimize(const SetObjective& obj, std::optional<Index> cardinality = std::nullopt,
                       const SfmOptions& options = {});

/// Polynomial path for a >= 0 or a <= 0 without side constraints.
/// Throws SignMixed on mixed signs, std::invalid_argument if a cap is active.
SolveReport solve_exact_unconstrained(const Instance& inst, const SfmOptions& options = {});

}  // namespace stieltjes
