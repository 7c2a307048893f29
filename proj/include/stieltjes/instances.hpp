#pragma once

// Besag-York-Mollie lattice instances and the instance file format.

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "stieltjes/instance.hpp"
#include "stieltjes/rng.hpp"
#include "stieltjes/types.hpp"

namespace stieltjes {

struct GridSpec {
  Index m = 10;
  double sigma2 = 1.0;
  double mu = 0.12;
  Index k = -1;  // negative: k = n (cardinality penalized)
  std::uint64_t seed = 1;
};

struct TrueSignal {
  Index m = 0;
  Vector x;  // row-major m x m grid, nonnegative
  std::vector<std::array<Index, 2>> centers;  // 1-based (row, col)
};

/// (1/sigma2) I + L with L the Laplacian of the m x m lattice; node (r, c)
/// has index r * m + c.
Matrix grid_quadratic(Index m, double sigma2);

/// Fixed 9 x 9 precision of a spike: 4 on the diagonal, -1 between
/// lattice neighbours of the 3 x 3 block.
const Matrix& spike_precision();

/// Three spikes; spike h uses stream h + 1 of spec.seed for its center
/// and its Gaussian draw s ~ N(0, spike_precision()^{-1}).
TrueSignal true_signal(const GridSpec& spec);

/// y_i = |x_i + eps_i|, eps ~ N(0, sigma2), drawn from `rng` in index order.
Vector observe(const TrueSignal& signal, double sigma2, Rng& rng);

/// Noise uses stream 100 of spec.seed.
Instance assemble(const GridSpec& spec);

std::string instance_id(const GridSpec& spec);

/// Support penalty for which the estimators of the given seeds have, in
/// total, about as many nonzeros as their true signals.  The estimator is
/// the perspective-relaxation incumbent (rounding plus local search);
/// bisection on log(mu) over [1e-3, 10], result rounded to 3 significant
/// digits.  spec.mu is ignored.
double calibrate_mu(const GridSpec& spec, const std::vector<std::uint64_t>& seeds);

std::string write_json(const Instance& inst);
Instance read_json(const std::string& text);
void save_instance(const Instance& inst, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

/// m x m grid as CSV, one lattice row per line.
void write_grid_csv(const Vector& values, Index m, const std::filesystem::path& path);

}  // namespace stieltjes
