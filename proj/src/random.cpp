#include "stieltjes/random.hpp"

#include <Eigen/Cholesky>

#include <cmath>

#include "stieltjes/linalg.hpp"
#include "stieltjes/rng.hpp"

namespace stieltjes {

Matrix random_stieltjes(Index n, Rng& rng, double density) {
  Matrix q = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) {
      if (rng.bernoulli(density)) {
        q(i, j) = q(j, i) = -rng.uniform(0.1, 1.0);
      }
    }
  }
  for (Index i = 0; i < n; ++i) q(i, i) = -q.row(i).sum() + rng.uniform(0.05, 1.0);
  Vector scale(n);
  for (Index i = 0; i < n; ++i) scale(i) = rng.uniform(0.6, 1.6);
  return scale.asDiagonal() * q * scale.asDiagonal();
}

Matrix random_nonpositive(Index n, Rng& rng) {
  Matrix s(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = j; i < n; ++i) s(i, j) = s(j, i) = -rng.uniform();
  }
  return s;
}

Instance random_instance(Index n, Rng& rng, LinearSign sign, Index k) {
  Instance inst;
  inst.q = random_stieltjes(n, rng);
  inst.a.resize(n);
  inst.c.resize(n);
  for (Index i = 0; i < n; ++i) {
    const double magnitude = rng.uniform(0.0, 4.0);
    switch (sign) {
      case LinearSign::kNonpositive:
        inst.a(i) = -magnitude;
        break;
      case LinearSign::kNonnegative:
        inst.a(i) = magnitude;
        break;
      case LinearSign::kMixed:
        inst.a(i) = rng.bernoulli(0.5) ? magnitude : -magnitude;
        break;
    }
    inst.c(i) = rng.uniform(0.1, 1.5);
  }
  inst.k = k < 0 ? n : k;
  // |x_S| <= 1/2 pinv(Q, S) |a| <= 1/2 Q^{-1} |a| entrywise for every support.
  const Matrix q_inv = inst.q.llt().solve(Matrix::Identity(n, n));
  inst.big_m = 1.01 * 0.5 * (q_inv * inst.a.cwiseAbs()).maxCoeff() + 1e-9;
  inst.meta.id = "random_n=" + std::to_string(n) + "_seed=" + std::to_string(rng.seed());
  inst.meta.seed = rng.seed();
  return inst;
}

}  // namespace stieltjes
