// Acceptance run: one PASS/FAIL line per criterion.  Exits 0 when every
// criterion passes, or, with --expect-fail 7,..., when exactly the listed
// criteria fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "stieltjes/instances.hpp"
#include "stieltjes/models.hpp"
#include "stieltjes/polymatroid.hpp"
#include "stieltjes/random.hpp"
#include "stieltjes/switching.hpp"
#include "stieltjes/verify.hpp"

using namespace stieltjes;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

Matrix three_node_q() {
  Matrix q(3, 3);
  q << 2, -1, -1, -1, 3, -1, -1, -1, 2;
  return q;
}

Outcome golden() {
  const Matrix q = three_node_q();
  std::vector<Matrix> expected(8, Matrix::Zero(3, 3));
  expected[1](0, 0) = 0.5;
  expected[2](1, 1) = 1.0 / 3;
  expected[3] << 0.6, 0.2, 0, 0.2, 0.4, 0, 0, 0, 0;
  expected[4](2, 2) = 0.5;
  expected[5] << 2.0 / 3, 0, 1.0 / 3, 0, 0, 0, 1.0 / 3, 0, 2.0 / 3;
  expected[6] << 0, 0, 0, 0, 0.4, 0.2, 0, 0.2, 0.6;
  expected[7] << 5.0 / 3, 1, 4.0 / 3, 1, 1, 1, 4.0 / 3, 1, 5.0 / 3;
  const auto points = enumerate_extreme_points(q);
  double point_err = points.size() == 8 ? 0.0 : 1.0;
  for (std::size_t m = 0; m < points.size() && m < 8; ++m) {
    const Vector z = SupportSet::from_mask(3, m).indicator();
    point_err = std::max(point_err, (points[m].z - z).cwiseAbs().maxCoeff());
    point_err = std::max(point_err, (points[m].w - expected[m]).cwiseAbs().maxCoeff());
  }

  Matrix r1 = Matrix::Zero(3, 3), r2(3, 3), r3(3, 3);
  r1(0, 0) = 0.5;
  r2 << 0.1, 0.2, 0, 0.2, 0.4, 0, 0, 0, 0;
  r3 << 16.0 / 15, 0.8, 4.0 / 3, 0.8, 0.6, 1, 4.0 / 3, 1, 5.0 / 3;
  const PolymatroidCut cut = separate(q, q.inverse(), Vector{{0.9, 0.5, 0.2}});
  double cut_err = 0.0;
  const Matrix want[3] = {r1, r2, r3};
  for (Index k = 0; k < 3; ++k) {
    cut_err = std::max(cut_err, (cut.coefficient(k) - want[k]).cwiseAbs().maxCoeff());
  }
  return {point_err <= 1e-12 && cut_err <= 1e-10,
          format("point error %.2e (<= 1e-12), cut error %.2e (<= 1e-10)", point_err, cut_err)};
}

Outcome suite(const std::string& name, int trials, Index max_n, double tolerance) {
  VerifyOptions options;
  options.trials = trials;
  options.max_n = max_n;
  const SuiteResult r = run_suite(name, options);
  return {r.passed && r.worst <= tolerance,
          format("%d trials, %ld checks, worst %.2e (<= %.0e)", r.trials, r.checks, r.worst,
                 tolerance)};
}

Outcome exactness() {
  Rng rng(2024, 5);
  CuttingPlaneOptions options;
  options.conic.tol = 1e-6;
  double worst_gap = 0.0, worst_frac = 0.0;
  int failures = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 3 + trial % 10;
    Instance inst = random_instance(n, rng, LinearSign::kNonpositive);
    const SolveReport exact = exact_enumerate(inst);
    const SolveReport poly = cutting_plane_solve(inst, options);
    const double gap = std::abs(poly.bound - exact.objective) / std::max(1.0, std::abs(exact.objective));
    double frac = 0.0;
    for (Index i = 0; i < n; ++i) {
      frac = std::max(frac, std::min(std::abs(poly.relaxed_z(i)), std::abs(1.0 - poly.relaxed_z(i))));
    }
    worst_gap = std::max(worst_gap, gap);
    worst_frac = std::max(worst_frac, frac);
    if (gap > 1e-4 || frac > 1e-4) ++failures;
  }
  return {failures == 0, format("20 instances n=3..12, worst bound error %.2e, worst fractionality %.2e "
                                "(<= 1e-4), %d failing",
                                worst_gap, worst_frac, failures)};
}

struct GridRun {
  double mean_gap = 0.0;
  double max_gap = 0.0;
  double min_gap = 1e300;
  int max_rounds = 0;
};

void record(GridRun& run, double gap, int rounds, int count) {
  run.mean_gap += gap / count;
  run.max_gap = std::max(run.max_gap, gap);
  run.min_gap = std::min(run.min_gap, gap);
  run.max_rounds = std::max(run.max_rounds, rounds);
}

const std::vector<std::uint64_t> kSeeds = {1, 2, 3, 4, 5};

Outcome penalized_grids() {
  bool ok = true;
  std::string detail;
  for (double sigma2 : {0.5, 2.0}) {
    GridSpec spec;
    spec.m = 6;
    spec.sigma2 = sigma2;
    spec.mu = calibrate_mu(spec, kSeeds);
    GridRun poly, pers;
    for (auto seed : kSeeds) {
      spec.seed = seed;
      const Instance inst = assemble(spec);
      const SolveReport p = cutting_plane_solve(inst);
      const SolveReport c = solve_pers_c(inst);
      record(poly, p.rel_gap, p.rounds, int(kSeeds.size()));
      record(pers, c.rel_gap, c.rounds, int(kSeeds.size()));
    }
    ok = ok && poly.max_gap <= 1e-3 && poly.max_rounds <= 10;
    if (sigma2 == 2.0) ok = ok && pers.mean_gap >= 1e-2;
    detail += format("sigma2=%g mu=%g: poly max gap %.2e, max rounds %d; pers-c mean gap %.2f%% "
                     "(min %.2f%%)  ",
                     sigma2, spec.mu, poly.max_gap, poly.max_rounds, 100 * pers.mean_gap,
                     100 * pers.min_gap);
  }
  return {ok, detail};
}

// Informational: the same grids with the fixed penalties of the large-scale
// table.  Not a criterion.
std::string fixed_penalty_note() {
  std::string detail;
  for (double sigma2 : {0.5, 2.0}) {
    GridSpec spec;
    spec.m = 6;
    spec.sigma2 = sigma2;
    spec.mu = sigma2 == 0.5 ? 0.25 : 0.12;
    GridRun pers;
    double support = 0.0;
    for (auto seed : kSeeds) {
      spec.seed = seed;
      const SolveReport c = solve_pers_c(assemble(spec));
      record(pers, c.rel_gap, c.rounds, int(kSeeds.size()));
      support += c.z.sum() / double(kSeeds.size());
    }
    detail += format("sigma2=%g mu=%g: pers-c mean gap %.3f%%, mean support %.1f/36  ", sigma2,
                     spec.mu, 100 * pers.mean_gap, support);
  }
  return detail;
}

Outcome cardinality_grids() {
  bool ok = true;
  std::string detail;
  BranchAndBoundOptions bb;
  bb.time_limit = 120;
  for (double sigma2 : {0.5, 2.0}) {
    GridSpec spec;
    spec.m = 6;
    spec.sigma2 = sigma2;
    spec.mu = 0.0;
    spec.k = 8;
    double worst = 0.0;
    int bb_optimal = 0;
    for (auto seed : kSeeds) {
      spec.seed = seed;
      const Instance inst = assemble(spec);
      const SolveReport p = cutting_plane_solve(inst);
      const SolveReport b = branch_and_bound(inst, bb);
      if (b.status == SolveStatus::kOptimal) ++bb_optimal;
      worst = std::max(worst, relative_gap(b.objective, p.bound));
    }
    ok = ok && worst <= 1e-2;
    detail += format("sigma2=%g k=8: worst poly gap to incumbent %.3f%% (<= 1%%), "
                     "branch-and-bound optimal %d/5  ",
                     sigma2, 100 * worst, bb_optimal);
  }
  return {ok, detail};
}

double median_separation_seconds(Index n, int repeats) {
  Rng rng(99, static_cast<std::uint64_t>(n));
  const Matrix q = random_stieltjes(n, rng, 0.1);
  const Matrix q_inv = q.inverse();
  std::vector<double> times;
  for (int r = 0; r < repeats; ++r) {
    Vector z(n);
    for (Index i = 0; i < n; ++i) z(i) = rng.uniform();
    const auto t0 = Clock::now();
    const PolymatroidCut cut = separate(q, q_inv, z);
    times.push_back(elapsed(t0));
    if (cut.dimension() != n) return -1.0;
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

Outcome separation_cost() {
  const double t100 = median_separation_seconds(100, 11);
  const double t50 = median_separation_seconds(50, 21);
  const double t200 = median_separation_seconds(200, 7);
  const double ratio = t200 / t50;
  const bool ok = t100 > 0 && t100 < 1.0 && ratio >= 64.0 / 3 && ratio <= 64.0 * 3;
  return {ok, format("n=100 median %.4fs (< 1s); n=200/n=50 ratio %.1f (in [21.3, 192])", t100,
                     ratio)};
}

Outcome switching() {
  Rng rng(31, 10);
  int feasible = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + trial % 19;
    Matrix q = Matrix::Zero(n, n);
    for (Index i = 0; i + 1 < n; ++i) {
      const double v = rng.uniform(0.1, 1.0) * (rng.bernoulli(0.5) ? 1.0 : -1.0);
      q(i, i + 1) = q(i + 1, i) = v;
    }
    for (Index i = 0; i < n; ++i) q(i, i) = q.row(i).cwiseAbs().sum() + rng.uniform(0.1, 1.0);
    const auto result = find_switch(q);
    if (const auto* s = std::get_if<SwitchSet>(&result)) {
      if (is_stieltjes(apply_switch(q, *s))) ++feasible;
    }
  }
  Matrix bad(3, 3);
  bad << 2, 0.5, 0.5, 0.5, 2, 0.5, 0.5, 0.5, 2;
  const auto result = find_switch(bad);
  const auto* cert = std::get_if<SwitchInfeasible>(&result);
  const bool certified = cert != nullptr && positive_edges_on_cycle(bad, cert->cycle) % 2 == 1;
  return {feasible == 100 && certified,
          format("%d/100 tridiagonal matrices switched to Stieltjes; all-positive 3x3 %s", feasible,
                 certified ? "infeasible with odd cycle" : "NOT certified")};
}

std::set<int> parse_list(const std::string& text) {
  std::set<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_failures;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--expect-fail" && i + 1 < argc) {
      expected_failures = parse_list(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--expect-fail 1,2,...]\n");
      return 2;
    }
  }

  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"golden three-node polytope and cut", 1.0, golden},
      {"supermodularity and monotonicity", 120.0, [] { return suite("supermodular", 200, 8, 1e-9); }},
      {"cut validity at extreme points", 120.0, [] { return suite("validity", 100, 8, 1e-9); }},
      {"hull equals binary minimum", 120.0, [] { return suite("hull", 50, 5, 1e-7); }},
      {"exactness for a <= 0 without cap", 600.0, exactness},
      {"penalized 6x6 grids", 1800.0, penalized_grids},
      {"cardinality-capped 6x6 grids", 1800.0, cardinality_grids},
      {"separation cost", 60.0, separation_cost},
      {"bordered inverse and nesting",  60.0,
       [] {
         const Outcome a = suite("identity", 1000, 10, 1e-9);
         const Outcome b = suite("nesting", 1000, 8, 1e-9);
         return Outcome{a.passed && b.passed, "identity: " + a.detail + "; nesting: " + b.detail};
       }},
      {"sign switching", 10.0, switching},
  };
  int failed = 0;
  std::set<int> failures;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome outcome = criteria[i].run();
    const double seconds = elapsed(t0);
    if (seconds > criteria[i].budget_s) {
      outcome.passed = false;
      outcome.detail += format(" [over budget %.0fs]", criteria[i].budget_s);
    }
    if (!outcome.passed) {
      ++failed;
      failures.insert(int(i) + 1);
    }
    std::printf("%s  %2zu  %-36s %7.2fs  %s\n", outcome.passed ? "PASS" : "FAIL", i + 1,
                criteria[i].name, seconds, outcome.detail.c_str());
    std::fflush(stdout);
    if (i == 5) {
      std::printf("info     fixed penalties: %s\n", fixed_penalty_note().c_str());
      std::fflush(stdout);
    }
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  if (!expected_failures.empty()) {
    std::printf("expected failures:");
    for (int c : expected_failures) std::printf(" %d", c);
    std::printf(" (%s)\n", failures == expected_failures ? "matched" : "MISMATCH");
  }
  return failures == expected_failures ? 0 : 1;
}
