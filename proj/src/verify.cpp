#include "stieltjes/verify.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <chrono>
#include <functional>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "stieltjes/errors.hpp"
#include "stieltjes/linalg.hpp"
#include "stieltjes/polymatroid.hpp"
#include "stieltjes/random.hpp"
#include "stieltjes/rng.hpp"
#include "stieltjes/simplex.hpp"
#include "stieltjes/submodular.hpp"

namespace stieltjes {

namespace {

using Json = nlohmann::ordered_json;

Json matrix_json(const Matrix& m) {
  auto rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
  }
  return rows;
}

Json set_json(const SupportSet& s) { return s.members(); }

Index dimension_for(int trial, Index lo, Index hi) {
  if (hi <= lo) return hi;
  return lo + static_cast<Index>(trial) % (hi - lo + 1);
}

class SuiteRun {
 public:
  SuiteRun(std::string name, std::uint64_t stream, const VerifyOptions& options)
      : options_(options), rng_(options.seed, stream), start_(std::chrono::steady_clock::now()) {
    result_.name = std::move(name);
  }

  Rng& rng() { return rng_; }
  const VerifyOptions& options() const { return options_; }

  // Records a check; returns false (and stores the counterexample) on failure.
  bool check(double violation, double tolerance, const std::function<Json()>& describe) {
    ++result_.checks;
    result_.worst = std::max(result_.worst, violation);
    if (violation <= tolerance) return true;
    result_.passed = false;
    Json doc;
    doc["suite"] = result_.name;
    doc["seed"] = options_.seed;
    doc["trial"] = result_.trials;
    doc["violation"] = violation;
    doc["tolerance"] = tolerance;
    const Json details = describe();
    for (const auto& [key, value] : details.items()) doc[key] = value;
    result_.counterexample = doc.dump(1);
    return false;
  }

  void next_trial() { ++result_.trials; }

  SuiteResult finish() {
    result_.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return result_;
  }

 private:
  VerifyOptions options_;
  Rng rng_;
  std::chrono::steady_clock::time_point start_;
  SuiteResult result_;
};

}  // namespace

SuiteResult verify_supermodular(const VerifyOptions& options) {
  SuiteRun run("supermodular", 11, options);
  constexpr double kTol = 1e-9;
  for (int trial = 0; trial < options.trials; ++trial) {
    const Index n = dimension_for(trial, 3, options.max_n);
    const Matrix q = random_stieltjes(n, run.rng());
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;

    // r[k][mask] = R(k; S) for masks without bit k.
    std::vector<std::vector<Matrix>> r(static_cast<std::size_t>(n));
    for (Index k = 0; k < n; ++k) {
      r[k].resize(std::size_t{1} << n);
      for (std::uint64_t mask = 0; mask <= full; ++mask) {
        if (mask >> k & 1) continue;
        r[k][mask] = big_r(q, k, SupportSet::from_mask(n, mask));
        if (options.fault == Fault::kRhoSign) r[k][mask] = -r[k][mask];
      }
    }

    for (Index k = 0; k < n; ++k) {
      const std::uint64_t others = full & ~(std::uint64_t{1} << k);
      for (std::uint64_t t = others;; t = (t - 1) & others) {
        const Matrix& rt = r[k][t];
        for (std::uint64_t s = t;; s = (s - 1) & t) {
          const Matrix& rs = r[k][s];
          const double increase = (rs - rt).maxCoeff();
          const double negative = -rs.minCoeff();
          auto describe = [&] {
            Json doc;
            doc["n"] = n;
            doc["Q"] = matrix_json(q);
            doc["k"] = k;
            doc["S"] = set_json(SupportSet::from_mask(n, s));
            doc["T"] = set_json(SupportSet::from_mask(n, t));
            doc["R_S"] = matrix_json(rs);
            doc["R_T"] = matrix_json(rt);
            return doc;
          };
          if (!run.check(std::max(increase, negative), kTol, describe)) return run.finish();
          if (s == 0) break;
        }
        if (t == 0) break;
      }
    }
    run.next_trial();
  }
  return run.finish();
}

SuiteResult verify_validity(const VerifyOptions& options) {
  SuiteRun run("validity", 12, options);
  constexpr double kTol = 1e-9;
  for (int trial = 0; trial < options.trials; ++trial) {
    const Index n = dimension_for(trial, 3, options.max_n);
    const Matrix q = random_stieltjes(n, run.rng());
    const Matrix q_inv = q.llt().solve(Matrix::Identity(n, n));
    const auto points = enumerate_extreme_points(q);
    for (int sample = 0; sample < 10; ++sample) {
      Vector z_bar(n);
      for (Index i = 0; i < n; ++i) z_bar(i) = run.rng().uniform();
      const PolymatroidCut cut = separate(q, q_inv, z_bar);
      for (const auto& point : points) {
        const double violation = -cut_violation(cut, point.z, point.w).minCoeff();
        auto describe = [&] {
          Json doc;
          doc["n"] = n;
          doc["Q"] = matrix_json(q);
          doc["z_bar"] = std::vector<double>(z_bar.begin(), z_bar.end());
          doc["cut"] = Json::parse(cut_to_json(cut));
          doc["point_z"] = std::vector<double>(point.z.begin(), point.z.end());
          return doc;
        };
        if (!run.check(violation, kTol, describe)) return run.finish();
      }
    }
    run.next_trial();
  }
  return run.finish();
}

double polymatroid_lp_minimum(const Matrix& q, const Matrix& sigma, const Vector& c) {
  const Index n = q.rows();
  if (n > 6) throw TooLarge("polymatroid_lp_minimum: n! cuts for n > 6");
  if (sigma.maxCoeff() > 0.0) throw std::invalid_argument("polymatroid_lp_minimum: Sigma must be <= 0");
  const Matrix q_inv = q.llt().solve(Matrix::Identity(n, n));
  const Index pairs = n * (n + 1) / 2;
  auto pair_row = [&](Index i, Index j) { return j * (j + 1) / 2 + i; };

  // LP dual of  min c'z + <Sigma, W>  s.t.  W_ij <= cut_ij(z) for every
  // permutation, 0 <= z <= 1:
  //   min sum mu  s.t.  sum_pi lambda_{pi,ij} = -Sigma'_ij,
  //                     sum lambda R_{ij,l} - mu_l + s_l = c_l,  all >= 0,
  // whose optimal value is minus the primal optimum.
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::vector<PolymatroidCut> cuts;
  do {
    cuts.push_back(cut_for_permutation(q_inv, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));

  const Index lambda_cols = static_cast<Index>(cuts.size()) * pairs;
  Matrix a = Matrix::Zero(pairs + n, lambda_cols + 2 * n);
  Vector b(pairs + n);
  Vector cost = Vector::Zero(lambda_cols + 2 * n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i <= j; ++i) b(pair_row(i, j)) = -(i == j ? sigma(i, i) : sigma(i, j) + sigma(j, i));
  }
  b.tail(n) = c;
  Index col = 0;
  for (const PolymatroidCut& cut : cuts) {
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i <= j; ++i, ++col) {
        a(pair_row(i, j), col) = 1.0;
        a.col(col).tail(n) = cut.row_coefficients(i, j);
      }
    }
  }
  for (Index l = 0; l < n; ++l) {
    a(pairs + l, lambda_cols + l) = -1.0;
    a(pairs + l, lambda_cols + n + l) = 1.0;
    cost(lambda_cols + l) = 1.0;
  }
  const LpResult lp = solve_standard_lp(a, b, cost);
  if (lp.status != LpStatus::kOptimal) throw NoConvergence("polymatroid_lp_minimum: LP not solved");
  return -lp.objective;
}

SuiteResult verify_hull(const VerifyOptions& options) {
  SuiteRun run("hull", 13, options);
  constexpr double kTol = 1e-7;
  const Index hi = std::min<Index>(options.max_n, 5);
  for (int trial = 0; trial < options.trials; ++trial) {
    const Index n = dimension_for(trial, std::min<Index>(3, hi), hi);
    const Matrix q = random_stieltjes(n, run.rng());
    const Matrix sigma = random_nonpositive(n, run.rng());
    Vector c(n);
    for (Index i = 0; i < n; ++i) c(i) = run.rng().uniform(-0.5, 1.5);
    const SetMinimum vertex = sfm_bruteforce(SetObjective(q, sigma, c));
    const double lp = polymatroid_lp_minimum(q, sigma, c);
    const double mismatch = std::abs(lp - vertex.value) / std::max(1.0, std::abs(vertex.value));
    auto describe = [&] {
      Json doc;
      doc["n"] = n;
      doc["Q"] = matrix_json(q);
      doc["Sigma"] = matrix_json(sigma);
      doc["c"] = std::vector<double>(c.begin(), c.end());
      doc["lp_minimum"] = lp;
      doc["vertex_minimum"] = vertex.value;
      doc["vertex_set"] = set_json(vertex.set);
      return doc;
    };
    if (!run.check(mismatch, kTol, describe)) return run.finish();
    run.next_trial();
  }
  return run.finish();
}

SuiteResult verify_identity(const VerifyOptions& options) {
  SuiteRun run("identity", 14, options);
  constexpr double kTol = 1e-9;
  for (int trial = 0; trial < options.trials; ++trial) {
    const Index dim = dimension_for(trial, 2, 10);
    Matrix g(dim, dim);
    for (Index j = 0; j < dim; ++j) {
      for (Index i = 0; i < dim; ++i) g(i, j) = run.rng().normal();
    }
    const Matrix r = g * g.transpose() + 0.5 * Matrix::Identity(dim, dim);
    const Index m = dim - 1;
    const Matrix a_inv = r.topLeftCorner(m, m).llt().solve(Matrix::Identity(m, m));
    const auto update = rank_one_inverse_update(a_inv, r.col(m).head(m), r(m, m));
    const Matrix direct = r.llt().solve(Matrix::Identity(dim, dim));
    const double violation =
        (update.inverse - direct).cwiseAbs().maxCoeff() / std::max(1.0, direct.cwiseAbs().maxCoeff());
    auto describe = [&] {
      Json doc;
      doc["R"] = matrix_json(r);
      doc["formula"] = matrix_json(update.inverse);
      doc["direct"] = matrix_json(direct);
      return doc;
    };
    if (!run.check(violation, kTol, describe)) return run.finish();
    run.next_trial();
  }
  return run.finish();
}

SuiteResult verify_nesting(const VerifyOptions& options) {
  SuiteRun run("nesting", 15, options);
  constexpr double kTol = 1e-9;
  for (int trial = 0; trial < options.trials; ++trial) {
    const Index n = dimension_for(trial, 3, options.max_n);
    const Matrix q = random_stieltjes(n, run.rng());
    std::vector<Index> t_members;
    std::vector<Index> s_members;
    for (Index i = 0; i < n; ++i) {
      if (!run.rng().bernoulli(0.6)) continue;
      t_members.push_back(i);
      if (run.rng().bernoulli(0.5)) s_members.push_back(i);
    }
    const SupportSet t(n, t_members);
    const SupportSet s(n, s_members);
    const Matrix diff = sub_pseudoinverse(q, t) - sub_pseudoinverse(q, s);
    const double violation = -min_eigenvalue(diff);
    auto describe = [&] {
      Json doc;
      doc["n"] = n;
      doc["Q"] = matrix_json(q);
      doc["S"] = set_json(s);
      doc["T"] = set_json(t);
      return doc;
    };
    if (!run.check(violation, kTol, describe)) return run.finish();
    run.next_trial();
  }
  return run.finish();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"supermodular", "validity", "hull", "identity",
                                                 "nesting"};
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& options) {
  if (name == "supermodular") return verify_supermodular(options);
  if (name == "validity") return verify_validity(options);
  if (name == "hull") return verify_hull(options);
  if (name == "identity") return verify_identity(options);
  if (name == "nesting") return verify_nesting(options);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace stieltjes
