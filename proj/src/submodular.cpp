#include "stieltjes/submodular.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "stieltjes/errors.hpp"
#include "stieltjes/linalg.hpp"
#include "stieltjes/polymatroid.hpp"

namespace stieltjes {

SetObjective::SetObjective(Matrix q, Matrix sigma, Vector c)
    : q_(std::move(q)), sigma_(std::move(sigma)), c_(std::move(c)) {
  const Index n = q_.rows();
  if (q_.cols() != n || sigma_.rows() != n || sigma_.cols() != n || c_.size() != n) {
    throw std::invalid_argument("SetObjective: dimension mismatch");
  }
  if (sigma_.maxCoeff() > 0.0) {
    throw std::invalid_argument("SetObjective: Sigma must be entrywise nonpositive");
  }
  std::vector<Index> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), Index{0});
  q_inv_ = sub_pseudoinverse(q_, SupportSet(n, all));
}

Vector SetObjective::chain_increments(const std::vector<Index>& order) const {
  const auto factor = cholesky_ordered(q_inv_, order);
  const Index n = dimension();
  Vector inc(n);
  for (Index k = 0; k < n; ++k) {
    const auto v = factor.columns.col(k);
    inc(k) = c_(order[k]) + v.dot(sigma_ * v);
  }
  return inc;
}

double theta_total(const SetObjective& obj, const SupportSet& s) {
  double value = 0.0;
  for (Index i : s) value += obj.c()(i);
  if (s.empty()) return value;
  return value + obj.sigma().cwiseProduct(sub_pseudoinverse(obj.q(), s)).sum();
}

LovaszValue lovasz_eval(const SetObjective& obj, const Vector& z) {
  const std::vector<Index> order = separation_order(z);
  const Vector inc = obj.chain_increments(order);
  LovaszValue out;
  out.subgradient.resize(obj.dimension());
  for (Index k = 0; k < obj.dimension(); ++k) {
    out.subgradient(order[k]) = inc(k);
    out.value += inc(k) * z(order[k]);
  }
  return out;
}

SetMinimum sfm_bruteforce(const SetObjective& obj) {
  const Index n = obj.dimension();
  if (n > kMaxBruteForceDimension) throw TooLarge("sfm_bruteforce: n exceeds 22");
  SetMinimum best{SupportSet(n), 0.0};
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const SupportSet s = SupportSet::from_mask(n, mask);
    const double value = theta_total(obj, s);
    const double tie = 1e-12 * std::max(1.0, std::abs(best.value));
    if (value < best.value - tie ||
        (value <= best.value + tie && lexicographically_less(s, best.set))) {
      best = {s, value};
    }
  }
  return best;
}

namespace {

struct InnerResult {
  SupportSet set;
  double value;
  double lower_bound;
  int iterations;
};

// Minimizes F(S) + shift * |S| over all S, keeping the best chain set whose
// size does not exceed `cap` (evaluated without the shift) in `capped`.
InnerResult minimize_shifted(const SetObjective& obj, double shift, Index cap,
                             SetMinimum& capped, const SfmOptions& options) {
  const Index n = obj.dimension();
  auto greedy_vertex = [&](const std::vector<Index>& order) {
    const Vector inc = obj.chain_increments(order);
    Vector vertex(n);
    for (Index k = 0; k < n; ++k) vertex(order[k]) = inc(k) + shift;
    return vertex;
  };
  auto ascending = [&](const Vector& s) {
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return s(a) < s(b); });
    return order;
  };

  InnerResult result{SupportSet(n), 0.0, -std::numeric_limits<double>::infinity(), 0};
  auto scan_chain = [&](const std::vector<Index>& order, const Vector& vertex) {
    double running = 0.0;
    std::vector<Index> members;
    for (Index k = 0; k < n; ++k) {
      running += vertex(order[k]);
      members.push_back(order[k]);
      if (running < result.value) result = {SupportSet(n, members), running, result.lower_bound, 0};
      const Index size = k + 1;
      if (size <= cap) {
        const double unshifted = running - shift * double(size);
        if (unshifted < capped.value) capped = {SupportSet(n, members), unshifted};
      }
    }
  };

  std::vector<Index> order = ascending(Vector::Zero(n));
  Vector s = greedy_vertex(order);
  scan_chain(order, s);
  int it = 0;
  for (; it < options.max_iter; ++it) {
    const double lb = s.cwiseMin(0.0).sum();
    result.lower_bound = std::max(result.lower_bound, lb);
    if (result.value - result.lower_bound <= options.tol * std::max(1.0, std::abs(result.value))) break;

    order = ascending(s);
    const Vector vertex = greedy_vertex(order);
    scan_chain(order, vertex);
    const Vector dir = vertex - s;
    const double fw_gap = -s.dot(dir);
    const double dir_norm2 = dir.squaredNorm();
    if (fw_gap <= options.tol * std::max(1.0, s.squaredNorm()) || dir_norm2 == 0.0) break;
    const double gamma = std::clamp(fw_gap / dir_norm2, 0.0, 1.0);
    s += gamma * dir;
  }
  result.lower_bound = std::max(result.lower_bound, s.cwiseMin(0.0).sum());
  result.iterations = it;
  return result;
}

}  // namespace

SfmResult sfm_minimize(const SetObjective& obj, std::optional<Index> cardinality,
                       const SfmOptions& options) {
  const Index n = obj.dimension();
  const Index cap = cardinality.value_or(n);
  if (cap < 0) throw std::invalid_argument("sfm_minimize: negative cardinality");

  SetMinimum capped{SupportSet(n), 0.0};
  SfmResult out;
  if (cap >= n) {
    const InnerResult inner = minimize_shifted(obj, 0.0, n, capped, options);
    out.set = inner.set;
    out.value = inner.value;
    out.lower_bound = std::min(inner.lower_bound, inner.value);
    out.iterations = inner.iterations;
  } else {
    // Lagrangian bound max_{lambda >= 0} min_S F(S) + lambda (|S| - k).
    double best_bound = -std::numeric_limits<double>::infinity();
    int iterations = 0;
    auto probe = [&](double lambda) {
      const InnerResult inner = minimize_shifted(obj, lambda, cap, capped, options);
      iterations += inner.iterations;
      best_bound = std::max(best_bound, inner.lower_bound - lambda * double(cap));
      return inner.set.size();
    };
    double lo = 0.0;
    double hi = 1.0;
    if (probe(lo) > cap) {
      while (probe(hi) > cap && hi < 1e12) {
        lo = hi;
        hi *= 2.0;
      }
      for (int step = 0; step < 60 && hi - lo > 1e-10 * std::max(1.0, hi); ++step) {
        const double mid = 0.5 * (lo + hi);
        if (probe(mid) > cap) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
    }
    out.set = capped.set;
    out.value = capped.value;
    out.lower_bound = std::min(best_bound, capped.value);
    out.iterations = iterations;
  }
  out.z = out.set.indicator();
  out.certified = out.value - out.lower_bound <= options.tol * std::max(1.0, std::abs(out.value)) + 1e-12;
  return out;
}

SolveReport solve_exact_unconstrained(const Instance& inst, const SfmOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (inst.cardinality_active()) {
    throw std::invalid_argument("solve_exact_unconstrained: cardinality constraint present");
  }
  const bool nonpositive = inst.a.maxCoeff() <= 0.0;
  const bool nonnegative = inst.a.minCoeff() >= 0.0;
  if (!nonpositive && !nonnegative) {
    throw SignMixed("solve_exact_unconstrained: linear term has mixed signs");
  }
  const Matrix sigma = -0.25 * inst.a * inst.a.transpose();
  const SetObjective obj(inst.q, sigma, inst.c);
  const SfmResult sfm = sfm_minimize(obj, std::nullopt, options);

  const Matrix w = sub_pseudoinverse(inst.q, sfm.set);
  SolveReport report;
  report.instance_id = inst.meta.id;
  report.model = "sfm";
  report.z = sfm.z;
  report.w = w;
  report.x = -0.5 * w * inst.a;
  report.t = report.x.dot(inst.q * report.x);
  report.objective = objective_value(inst, report.x, report.z);
  report.bound = std::min(report.objective, sfm.lower_bound + inst.constant);
  report.rel_gap = relative_gap(report.objective, report.bound);
  report.status = sfm.certified ? SolveStatus::kOptimal : SolveStatus::kBoundOnly;
  report.rounds = sfm.iterations;
  report.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace stieltjes
