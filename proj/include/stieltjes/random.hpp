#pragma once

// Random test data: Stieltjes matrices and instances.

#include "stieltjes/instance.hpp"
#include "stieltjes/rng.hpp"
#include "stieltjes/types.hpp"

namespace stieltjes {

/// Diagonally dominant Z-matrix with random sparsity, then a random positive
/// diagonal congruence (so dominance is not guaranteed, Stieltjes is).
Matrix random_stieltjes(Index n, Rng& rng, double density = 0.6);

enum class LinearSign { kNonpositive, kNonnegative, kMixed };

/// Random instance with c_i uniform in [0.1, 1.5] and a of the given sign.
Instance random_instance(Index n, Rng& rng, LinearSign sign = LinearSign::kNonpositive,
                         Index k = -1);

/// Symmetric random matrix with entries in [-1, 0].
Matrix random_nonpositive(Index n, Rng& rng);

}  // namespace stieltjes
