#pragma once

// Set functions theta_ij(S) = pinv(Q, S)_ij, their increments rho and R(k; S),
// the matrix polymatroid inequalities W <= sum_k R(pi_k; S_{k-1}) z_{pi_k}
// and their separation.

#include <span>
#include <string>
#include <vector>

#include "stieltjes/types.hpp"

namespace stieltjes {

/// One matrix inequality W <= sum_k v_k v_k' z_{perm[k]}.  The chain is
/// S_k = {perm[0], ..., perm[k]} and v_k is supported on S_k.
struct PolymatroidCut {
  std::vector<Index> perm;
  Matrix factors;  // column k is v_k

  Index dimension() const { return factors.rows(); }
  /// R(perm[k]; S_{k-1}) = v_k v_k'.
  Matrix coefficient(Index k) const;
  Matrix rhs(const Vector& z) const;
  /// Coefficient of each z_l in the scalar inequality for entry (i, j).
  Vector row_coefficients(Index i, Index j) const;
};

struct StieltjesPolytopePoint {
  Vector z;
  Matrix w;
};

double theta(const Matrix& q, const SupportSet& s, Index i, Index j);
double rho(const Matrix& q, Index k, const SupportSet& s, Index i, Index j);
/// R(k; S) = pinv(Q, S + k) - pinv(Q, S), built from one bordered update.
Matrix big_r(const Matrix& q, Index k, const SupportSet& s);

/// Chain order used by separation: z descending, ties by ascending index.
std::vector<Index> separation_order(const Vector& z_bar);

/// Cut for an explicit chain order; q_inv = Q^{-1}.
PolymatroidCut cut_for_permutation(const Matrix& q_inv, std::span<const Index> perm);

/// Most violated matrix inequality at z_bar (clamped into [0, 1]).  Cost is
/// one ordered Cholesky of q_inv.
PolymatroidCut separate(const Matrix& q, const Matrix& q_inv, const Vector& z_bar);

/// slack(i, j) = rhs_ij(z_bar) - W_bar(i, j); negative entries are violated.
Matrix cut_violation(const PolymatroidCut& cut, const Vector& z_bar, const Matrix& w_bar);

/// All (e_S, pinv(Q, S)); point m has support given by the bits of m.
std::vector<StieltjesPolytopePoint> enumerate_extreme_points(const Matrix& q);

inline constexpr Index kMaxEnumerationDimension = 16;

struct FacetFixture {
  int row;  // 1, 2 or 3
  Index k;  // row 2: linear index of (k, l); row 3: chain length
  StieltjesPolytopePoint point;
};

/// Points on the face W_ij = rhs_ij(z) of the cut for `perm`:
///   #1 (e, Q^{-1});  #2 (e, Q^{-1} - E_kl) for (k, l) != (i, j);
///   #3 (e_{S_k}, pinv(Q, S_k)) for k = 0..n (k = n repeats #1).
std::vector<FacetFixture> facet_fixture_points(const Matrix& q, Index i, Index j,
                                               std::span<const Index> perm);

std::string cut_to_json(const PolymatroidCut& cut);
PolymatroidCut cut_from_json(const std::string& text);

}  // namespace stieltjes
