#pragma once

// Randomized property suites over the polymatroid machinery.  Each suite
// draws its own data from (seed, suite stream) and stops at the first
// counterexample, which is reported as a JSON document.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stieltjes/types.hpp"

namespace stieltjes {

enum class Fault { kNone, kRhoSign };

struct VerifyOptions {
  Index max_n = 8;  // dimensions cycle through 3..max_n (hull: 3..min(max_n, 5))
  int trials = 200;
  std::uint64_t seed = 7;
  Fault fault = Fault::kNone;
};

struct SuiteResult {
  std::string name;
  int trials = 0;
  long checks = 0;
  double worst = 0.0;  // largest violation seen (or LP mismatch for hull)
  bool passed = true;
  double seconds = 0.0;
  std::string counterexample;  // JSON, empty when passed
};

/// rho(k; S) <= rho(k; T) and rho >= 0 for all S subset T, k outside T.
SuiteResult verify_supermodular(const VerifyOptions& options);
/// Cuts separated at 10 random points per matrix hold at every extreme point.
SuiteResult verify_validity(const VerifyOptions& options);
/// LP over all n! cuts and 0 <= z <= 1 equals the minimum over the vertices.
SuiteResult verify_hull(const VerifyOptions& options);
/// Bordered inverse formula against direct inversion, dims 2..10.
SuiteResult verify_identity(const VerifyOptions& options);
/// pinv(Q, T) - pinv(Q, S) is PSD for S subset T.
SuiteResult verify_nesting(const VerifyOptions& options);

const std::vector<std::string>& suite_names();

/// Runs one suite by name; "all" is handled by the caller.
SuiteResult run_suite(const std::string& name, const VerifyOptions& options);

/// Minimum of c'z + <Sigma, W> over z in [0,1]^n and W below every cut.
/// Sigma must be entrywise nonpositive; n <= 6.
double polymatroid_lp_minimum(const Matrix& q, const Matrix& sigma, const Vector& c);

}  // namespace stieltjes
