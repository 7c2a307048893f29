#include "stieltjes/models.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <map>
#include <memory>
#include <queue>
#include <stdexcept>
#include <utility>

#include "stieltjes/errors.hpp"
#include "stieltjes/linalg.hpp"
#include "stieltjes/polymatroid.hpp"

namespace stieltjes {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct RowBuilder {
  ConicProblem& problem;
  Index row = 0;

  // Adds the row s_row = b - sum coef * x.
  void add(std::initializer_list<std::pair<Index, double>> coeffs, double b) {
    for (const auto& [col, value] : coeffs) {
      if (value != 0.0) problem.entries.emplace_back(row, col, value);
    }
    rhs.push_back(b);
    ++row;
  }
  void add(const std::vector<std::pair<Index, double>>& coeffs, double b) {
    for (const auto& [col, value] : coeffs) {
      if (value != 0.0) problem.entries.emplace_back(row, col, value);
    }
    rhs.push_back(b);
    ++row;
  }
  void finish() { problem.rhs = Eigen::Map<const Vector>(rhs.data(), static_cast<Index>(rhs.size())); }

  std::vector<double> rhs;
};

// Value of a support without forming the padded inverse.
double support_value(const Instance& inst, const std::vector<Index>& members) {
  const Index m = static_cast<Index>(members.size());
  double value = inst.constant;
  if (m == 0) return value;
  Matrix sub(m, m);
  Vector a(m);
  for (Index c = 0; c < m; ++c) {
    a(c) = inst.a(members[c]);
    value += inst.c(members[c]);
    for (Index r = 0; r < m; ++r) sub(r, c) = inst.q(members[r], members[c]);
  }
  const Eigen::LLT<Matrix> llt(sub);
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("support_value: Q_S not positive definite");
  return value - 0.25 * a.dot(llt.solve(a));
}

bool improves(double candidate, double best) {
  return candidate < best - 1e-12 * std::max(1.0, std::abs(best));
}

// Grows a support one index at a time, keeping Q_S^{-1} and a_S' Q_S^{-1} a_S.
struct GrowingSupport {
  std::vector<Index> members;
  Matrix inv;
  double quad = 0.0;
  double linear = 0.0;

  void push(const Instance& inst, Index k) {
    const Index m = static_cast<Index>(members.size());
    Vector border(m);
    Vector a(m + 1);
    for (Index r = 0; r < m; ++r) {
      border(r) = inst.q(members[r], k);
      a(r) = inst.a(members[r]);
    }
    a(m) = inst.a(k);
    auto update = rank_one_inverse_update(inv, border, inst.q(k, k));
    const double ua = update.u.dot(a);
    quad += update.scale * ua * ua;
    linear += inst.c(k);
    inv = std::move(update.inverse);
    members.push_back(k);
  }
  double value(const Instance& inst) const { return linear - 0.25 * quad + inst.constant; }
};

// Best prefix (of size <= limit) of `order`, evaluated incrementally.
SupportSet best_chain_prefix(const Instance& inst, const std::vector<Index>& order, Index limit) {
  GrowingSupport grow;
  grow.inv = Matrix(0, 0);
  double best = inst.constant;
  std::size_t best_size = 0;
  for (Index k = 0; k < std::min<Index>(limit, static_cast<Index>(order.size())); ++k) {
    grow.push(inst, order[k]);
    const double v = grow.value(inst);
    if (improves(v, best)) {
      best = v;
      best_size = grow.members.size();
    }
  }
  return SupportSet(inst.n(), std::vector<Index>(order.begin(), order.begin() + best_size));
}

std::vector<Index> descending_order(const Vector& z) {
  std::vector<Index> order(static_cast<std::size_t>(z.size()));
  for (Index i = 0; i < z.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](Index l, Index r) { return z(l) > z(r); });
  return order;
}

SupportSolution incumbent_from(const Instance& inst, const Vector& z_bar) {
  const SupportSet chain = best_chain_prefix(inst, descending_order(z_bar), inst.k);
  const SupportSet rounded = round_indicator(z_bar, inst.k);
  const SupportSolution a = improve_support(inst, chain);
  const SupportSolution b = improve_support(inst, rounded);
  return improves(b.value, a.value) ? b : a;
}

Vector clamp01(const Vector& v) { return v.cwiseMax(0.0).cwiseMin(1.0); }

void fill_incumbent(SolveReport& report, const SupportSolution& best) {
  report.objective = best.value;
  report.x = best.x;
  report.z = best.support.indicator();
}

}  // namespace

// ---------------------------------------------------------------- pers-c

PersModel build_pers_c(const Instance& inst) {
  const Index n = inst.n();
  PersModel model;
  PersLayout& lay = model.layout;
  lay.n = n;
  ConicProblem& p = model.problem;
  p.num_vars = lay.num_vars();
  p.objective = Vector::Zero(p.num_vars);
  p.offset = inst.constant;

  const Vector u = inst.q.llt().solve(Vector::Ones(n));
  const Vector d = u.cwiseInverse();
  Matrix rest = inst.q;
  rest.diagonal() -= d;

  for (Index i = 0; i < n; ++i) {
    p.objective(lay.x(i)) = inst.a(i);
    p.objective(lay.z(i)) = inst.c(i);
    p.objective(lay.tau(i)) = d(i);
  }

  RowBuilder rows{p, 0, {}};
  Index nonneg = 0;
  for (Index i = 0; i < n; ++i) {
    rows.add({{lay.x(i), 1.0}, {lay.z(i), -inst.big_m}}, 0.0);
    rows.add({{lay.x(i), -1.0}, {lay.z(i), -inst.big_m}}, 0.0);
  }
  nonneg += 2 * n;
  lay.z_bound_row = rows.row;
  for (Index i = 0; i < n; ++i) {
    rows.add({{lay.z(i), 1.0}}, 1.0);
    rows.add({{lay.z(i), -1.0}}, 0.0);
  }
  nonneg += 2 * n;
  if (inst.cardinality_active()) {
    std::vector<std::pair<Index, double>> card;
    for (Index i = 0; i < n; ++i) card.emplace_back(lay.z(i), 1.0);
    rows.add(card, static_cast<double>(inst.k));
    ++nonneg;
  }
  p.cones.push_back({ConeKind::kNonneg, nonneg});

  // x_i^2 <= tau_i z_i  as  |(2 x_i, tau_i - z_i)| <= tau_i + z_i.
  for (Index i = 0; i < n; ++i) {
    rows.add({{lay.tau(i), -1.0}, {lay.z(i), -1.0}}, 0.0);
    rows.add({{lay.x(i), -2.0}}, 0.0);
    rows.add({{lay.tau(i), -1.0}, {lay.z(i), 1.0}}, 0.0);
    p.cones.push_back({ConeKind::kSecondOrder, 3});
  }

  // x'Px = sum_{i<j} -P_ij u_i u_j (x_i / u_i - x_j / u_j)^2 since P u = 0.
  std::vector<std::vector<std::pair<Index, double>>> factor_rows;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < j; ++i) {
      if (rest(i, j) >= 0.0) continue;
      const double w = std::sqrt(-rest(i, j) * u(i) * u(j));
      factor_rows.push_back({{lay.x(i), -2.0 * w / u(i)}, {lay.x(j), 2.0 * w / u(j)}});
    }
  }
  if (!factor_rows.empty()) {
    p.objective(lay.tau0()) = 1.0;
    rows.add({{lay.tau0(), -1.0}}, 1.0);
    for (const auto& r : factor_rows) rows.add(r, 0.0);
    rows.add({{lay.tau0(), -1.0}}, -1.0);
    p.cones.push_back({ConeKind::kSecondOrder, static_cast<Index>(factor_rows.size()) + 2});
  }
  rows.finish();
  p.validate();
  return model;
}

Vector pers_rhs_with_bounds(const PersModel& model, const Vector& lo, const Vector& hi) {
  Vector rhs = model.problem.rhs;
  for (Index i = 0; i < model.layout.n; ++i) {
    rhs(model.layout.upper_row(i)) = hi(i);
    rhs(model.layout.lower_row(i)) = -lo(i);
  }
  return rhs;
}

// ------------------------------------------------------------------ poly

Index PolyLayout::w(Index i, Index j) const {
  if (i > j) std::swap(i, j);
  return 2 * n + 1 + j * (j + 1) / 2 + i;
}

PolyModel build_poly_master(const Instance& inst, const PolyOptions& options) {
  const Index n = inst.n();
  PolyModel model;
  PolyLayout& lay = model.layout;
  lay.n = n;
  ConicProblem& p = model.problem;
  p.num_vars = lay.num_vars();
  p.objective = Vector::Zero(p.num_vars);
  p.offset = inst.constant;
  for (Index i = 0; i < n; ++i) {
    p.objective(lay.x(i)) = inst.a(i);
    p.objective(lay.z(i)) = inst.c(i);
  }
  p.objective(lay.t()) = 1.0;

  RowBuilder rows{p, 0, {}};
  if (options.equalities) {
    for (Index i = 0; i < n; ++i) {
      std::vector<std::pair<Index, double>> coeffs;
      for (Index j = 0; j < n; ++j) {
        if (inst.q(i, j) != 0.0) coeffs.emplace_back(lay.w(i, j), inst.q(i, j));
      }
      coeffs.emplace_back(lay.z(i), -1.0);
      rows.add(coeffs, 0.0);
    }
    p.cones.push_back({ConeKind::kZero, n});
  }

  Index nonneg = 0;
  if (options.nonneg_w) {
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i <= j; ++i) rows.add({{lay.w(i, j), -1.0}}, 0.0);
    }
    nonneg += n * (n + 1) / 2;
  }
  for (Index i = 0; i < n; ++i) {
    rows.add({{lay.z(i), 1.0}}, 1.0);
    rows.add({{lay.z(i), -1.0}}, 0.0);
  }
  nonneg += 2 * n;
  if (inst.cardinality_active()) {
    std::vector<std::pair<Index, double>> card;
    for (Index i = 0; i < n; ++i) card.emplace_back(lay.z(i), 1.0);
    rows.add(card, static_cast<double>(inst.k));
    ++nonneg;
  }
  p.cones.push_back({ConeKind::kNonneg, nonneg});

  // (W x; x' t) in packed lower-triangular order.
  const Index dim = n + 1;
  for (Index c = 0; c < dim; ++c) {
    for (Index r = c; r < dim; ++r) {
      const double scale = r == c ? 1.0 : kSqrt2;
      Index var;
      if (r < n) {
        var = lay.w(r, c);
      } else if (c < n) {
        var = lay.x(c);
      } else {
        var = lay.t();
      }
      rows.add({{var, -scale}}, 0.0);
    }
  }
  p.cones.push_back({ConeKind::kPsd, dim});
  rows.finish();
  p.validate();
  return model;
}

Matrix extract_w(const PolyLayout& layout, const Vector& v) {
  Matrix w(layout.n, layout.n);
  for (Index j = 0; j < layout.n; ++j) {
    for (Index i = 0; i <= j; ++i) w(i, j) = w(j, i) = v(layout.w(i, j));
  }
  return w;
}

// ------------------------------------------------------------ solvers

SolveReport cutting_plane_solve(const Instance& inst, const CuttingPlaneOptions& options) {
  const auto start = Clock::now();
  const Index n = inst.n();
  SolveReport report;
  report.instance_id = inst.meta.id;
  report.model = "poly";

  const PolyModel model = build_poly_master(inst, options.master);
  const PolyLayout& lay = model.layout;
  ConicProblem problem = model.problem;
  const Matrix q_inv = inst.q.llt().solve(Matrix::Identity(n, n));

  std::map<std::pair<Index, Index>, std::vector<Vector>> existing;
  auto is_duplicate = [&](Index i, Index j, const Vector& coef) {
    auto& list = existing[{i, j}];
    for (const Vector& other : list) {
      if ((other - coef).cwiseAbs().maxCoeff() <= 1e-9) return true;
    }
    list.push_back(coef);
    return false;
  };

  // Rows of `cut` violated by more than cut_tol (all rows when slack is null).
  auto cut_rows = [&](const PolymatroidCut& cut, const Matrix* slack) {
    std::vector<LinearRow> rows;
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i <= j; ++i) {
        if (slack != nullptr && !((*slack)(i, j) < -options.cut_tol)) continue;
        const Vector coef = cut.row_coefficients(i, j);
        if (is_duplicate(i, j, coef)) continue;
        LinearRow row;
        row.coeffs.emplace_back(lay.w(i, j), 1.0);
        for (Index l = 0; l < n; ++l) {
          if (coef(l) != 0.0) row.coeffs.emplace_back(lay.z(l), -coef(l));
        }
        rows.push_back(std::move(row));
      }
    }
    return rows;
  };

  if (options.seed_cut) {
    const SolveReport root = solve_pers_c(inst, options.conic);
    if (root.status != SolveStatus::kInfeasibleLike) {
      const auto rows = cut_rows(separate(inst.q, q_inv, clamp01(root.relaxed_z)), nullptr);
      problem = add_cut_rows(problem, rows);
      report.cuts_added += static_cast<int>(rows.size());
    }
  }

  ConicSettings round_settings = options.conic;
  round_settings.tol = std::max(options.conic.tol, options.round_conic_tol);
  const bool refine = round_settings.tol > options.conic.tol;

  WarmStart warm;
  bool have_warm = false;
  ConicSolution sol;
  double previous = std::numeric_limits<double>::quiet_NaN();
  report.status = SolveStatus::kRoundLimit;
  for (int round = 1; round <= options.max_rounds; ++round) {
    if (round > 1 && seconds_since(start) > options.time_limit) {
      report.status = SolveStatus::kTimeLimit;
      break;
    }
    sol = solve(problem, round_settings, have_warm ? &warm : nullptr);
    report.rounds = round;
    if (sol.status == ConicStatus::kInfeasibleLike) {
      report.status = SolveStatus::kInfeasibleLike;
      break;
    }
    const double objective = sol.objective;
    report.bound_history.push_back(objective);

    Vector z_bar(n);
    for (Index i = 0; i < n; ++i) z_bar(i) = sol.x(lay.z(i));
    z_bar = clamp01(z_bar);
    const Matrix w_bar = extract_w(lay, sol.x);
    const PolymatroidCut cut = separate(inst.q, q_inv, z_bar);
    const Matrix slack = cut_violation(cut, z_bar, w_bar);

    const std::vector<LinearRow> rows = cut_rows(cut, &slack);

    if (options.trace != nullptr) {
      char line[200];
      std::snprintf(line, sizeof(line),
                    "round %2d  objective %.9g  status %s  iterations %d  rows %zu  time %.2fs\n",
                    round, objective, to_string(sol.status).c_str(), sol.iterations, rows.size(),
                    seconds_since(start));
      *options.trace << line << std::flush;
    }
    const bool stalled = round > 1 && std::abs(objective - previous) /
                                              std::max(1.0, std::abs(objective)) <
                                          options.tol_round;
    previous = objective;
    if (rows.empty() || stalled) {
      report.status =
          sol.status == ConicStatus::kOptimal ? SolveStatus::kOptimal : SolveStatus::kMaxIter;
      break;
    }
    if (round == options.max_rounds) break;
    warm = pad_warm_start(sol, rows);
    have_warm = true;
    problem = add_cut_rows(problem, rows);
    report.cuts_added += static_cast<int>(rows.size());
  }

  if (refine && report.status != SolveStatus::kInfeasibleLike && report.rounds > 0) {
    const WarmStart last = pad_warm_start(sol, Index{0});
    sol = solve(problem, options.conic, &last);
    if (sol.status == ConicStatus::kInfeasibleLike) {
      report.status = SolveStatus::kInfeasibleLike;
    } else if (report.status == SolveStatus::kOptimal && sol.status != ConicStatus::kOptimal) {
      report.status = SolveStatus::kMaxIter;
    }
    if (options.trace != nullptr) {
      char line[200];
      std::snprintf(line, sizeof(line), "final     objective %.9g  status %s  iterations %d  time %.2fs\n",
                    sol.objective, to_string(sol.status).c_str(), sol.iterations, seconds_since(start));
      *options.trace << line << std::flush;
    }
  }

  if (report.status == SolveStatus::kInfeasibleLike) {
    if (sol.certificate == Certificate::kUnbounded) {
      report.bound = -std::numeric_limits<double>::infinity();
    }
    report.time_s = seconds_since(start);
    return report;
  }
  report.bound = sol.objective;
  Vector z_bar(n);
  for (Index i = 0; i < n; ++i) z_bar(i) = sol.x(lay.z(i));
  report.relaxed_z = z_bar;
  report.w = extract_w(lay, sol.x);
  report.t = sol.x(lay.t());
  fill_incumbent(report, incumbent_from(inst, clamp01(z_bar)));
  report.rel_gap = relative_gap(report.objective, report.bound);
  report.time_s = seconds_since(start);
  return report;
}

SolveReport solve_pers_c(const Instance& inst, const ConicSettings& settings) {
  const auto start = Clock::now();
  const Index n = inst.n();
  SolveReport report;
  report.instance_id = inst.meta.id;
  report.model = "pers-c";
  const PersModel model = build_pers_c(inst);
  const ConicSolution sol = solve(model.problem, settings);
  report.rounds = 1;
  if (sol.status == ConicStatus::kInfeasibleLike) {
    report.status = SolveStatus::kInfeasibleLike;
    report.time_s = seconds_since(start);
    return report;
  }
  report.status = sol.status == ConicStatus::kOptimal ? SolveStatus::kOptimal : SolveStatus::kMaxIter;
  report.bound = sol.objective;
  Vector z_bar(n);
  for (Index i = 0; i < n; ++i) z_bar(i) = sol.x(model.layout.z(i));
  report.relaxed_z = z_bar;
  fill_incumbent(report, incumbent_from(inst, clamp01(z_bar)));
  report.rel_gap = relative_gap(report.objective, report.bound);
  report.time_s = seconds_since(start);
  return report;
}

SolveReport exact_enumerate(const Instance& inst) {
  const auto start = Clock::now();
  const Index n = inst.n();
  if (n > kMaxEnumerationSize) {
    throw TooLarge("exact_enumerate: n = " + std::to_string(n) + " exceeds " +
                   std::to_string(kMaxEnumerationSize));
  }
  double best = inst.constant;
  std::vector<Index> best_members;

  // Preorder over supports {i_1 < i_2 < ...} is lexicographic order, so a
  // strict improvement test keeps the lexicographically smallest minimizer.
  std::vector<GrowingSupport> stack(static_cast<std::size_t>(n + 1));
  stack[0].inv = Matrix(0, 0);
  auto visit = [&](auto&& self, Index depth, Index next) -> void {
    if (depth >= inst.k) return;
    for (Index k = next; k < n; ++k) {
      stack[depth + 1] = stack[depth];
      stack[depth + 1].push(inst, k);
      const double v = stack[depth + 1].value(inst);
      if (improves(v, best)) {
        best = v;
        best_members = stack[depth + 1].members;
      }
      self(self, depth + 1, k + 1);
    }
  };
  visit(visit, 0, 0);

  SolveReport report;
  report.instance_id = inst.meta.id;
  report.model = "exact";
  report.status = SolveStatus::kOptimal;
  const SupportSolution sol = evaluate_support(inst, SupportSet(n, best_members));
  fill_incumbent(report, sol);
  report.objective = best;
  report.bound = best;
  report.rel_gap = 0.0;
  report.time_s = seconds_since(start);
  return report;
}

namespace {

struct Node {
  Vector lo;
  Vector hi;
  double bound;
  long id;
  std::shared_ptr<WarmStart> warm;
};

struct NodeOrder {
  bool operator()(const Node& l, const Node& r) const {
    if (l.bound != r.bound) return l.bound > r.bound;
    return l.id < r.id;  // newer first among equal bounds
  }
};

}  // namespace

SolveReport branch_and_bound(const Instance& inst, const BranchAndBoundOptions& options) {
  const auto start = Clock::now();
  const Index n = inst.n();
  SolveReport report;
  report.instance_id = inst.meta.id;
  report.model = "pers-b";

  const PersModel model = build_pers_c(inst);
  ConicSolver solver(model.problem, options.conic);

  SupportSolution incumbent = evaluate_support(inst, SupportSet(n));
  auto prune_level = [&] {
    return incumbent.value - options.gap_tol * std::max(1.0, std::abs(incumbent.value));
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  open.push({Vector::Zero(n), Vector::Ones(n), -std::numeric_limits<double>::infinity(), next_id++, nullptr});
  bool stopped = false;
  double root_bound = -std::numeric_limits<double>::infinity();

  while (!open.empty()) {
    if (seconds_since(start) > options.time_limit || report.nodes >= options.max_nodes) {
      stopped = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (node.bound >= prune_level()) continue;

    solver.update_rhs(pers_rhs_with_bounds(model, node.lo, node.hi));
    const ConicSolution sol = solver.solve(node.warm.get());
    ++report.nodes;
    if (sol.status == ConicStatus::kInfeasibleLike) continue;

    double bound = node.bound;
    if (sol.status == ConicStatus::kOptimal) {
      bound = std::max(bound, std::min(sol.objective, sol.dual_objective));
    }
    if (report.nodes == 1) {
      root_bound = bound;
      report.bound_history.push_back(bound);
    }

    Vector z_bar(n);
    for (Index i = 0; i < n; ++i) z_bar(i) = std::clamp(sol.x(model.layout.z(i)), node.lo(i), node.hi(i));
    if (report.nodes == 1) {
      report.relaxed_z = z_bar;
      const SupportSolution start_point = incumbent_from(inst, z_bar);
      if (improves(start_point.value, incumbent.value)) incumbent = start_point;
    } else {
      const SupportSet rounded = round_indicator(z_bar, inst.k);
      bool respects = true;
      for (Index i = 0; i < n; ++i) {
        const double zi = rounded.contains(i) ? 1.0 : 0.0;
        respects = respects && zi >= node.lo(i) && zi <= node.hi(i);
      }
      if (respects) {
        const double v = support_value(inst, rounded.members());
        if (improves(v, incumbent.value)) incumbent = evaluate_support(inst, rounded);
      }
    }
    if (bound >= prune_level()) continue;

    Index branch = -1;
    double most = 1e-4;
    for (Index i = 0; i < n; ++i) {
      if (node.lo(i) == node.hi(i)) continue;
      const double frac = std::min(z_bar(i), 1.0 - z_bar(i));
      if (frac > most) {
        most = frac;
        branch = i;
      }
    }
    if (branch < 0) {
      // Integral relaxation: its support is optimal within this node.
      const SupportSet support = SupportSet::from_indicator(z_bar);
      if (support.size() <= inst.k) {
        const double v = support_value(inst, support.members());
        if (improves(v, incumbent.value)) incumbent = evaluate_support(inst, support);
      }
      continue;
    }
    auto warm = std::make_shared<WarmStart>(WarmStart{sol.x, sol.s, sol.y});
    Node down{node.lo, node.hi, bound, next_id++, warm};
    down.hi(branch) = 0.0;
    Node up{node.lo, node.hi, bound, next_id++, warm};
    up.lo(branch) = 1.0;
    if (up.lo.sum() <= static_cast<double>(inst.k) + 0.5) open.push(std::move(up));
    open.push(std::move(down));
  }

  double global = incumbent.value;
  while (!open.empty()) {
    global = std::min(global, open.top().bound);
    open.pop();
  }
  fill_incumbent(report, incumbent);
  report.bound = stopped ? global : incumbent.value;
  report.rel_gap = relative_gap(report.objective, report.bound);
  report.status = stopped ? SolveStatus::kTimeLimit : SolveStatus::kOptimal;
  if (report.bound_history.empty()) report.bound_history.push_back(root_bound);
  report.rounds = 1;
  report.time_s = seconds_since(start);
  return report;
}

SupportSet round_indicator(const Vector& z, Index k) {
  std::vector<Index> chosen;
  for (Index i : descending_order(z)) {
    if (z(i) <= 0.5 || static_cast<Index>(chosen.size()) >= k) break;
    chosen.push_back(i);
  }
  return SupportSet(z.size(), chosen);
}

SupportSolution improve_support(const Instance& inst, const SupportSet& start, int max_passes) {
  const Index n = inst.n();
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (Index i : start) in[i] = 1;
  auto members = [&] {
    std::vector<Index> out;
    for (Index i = 0; i < n; ++i) {
      if (in[i]) out.push_back(i);
    }
    return out;
  };
  double best = support_value(inst, members());
  for (int pass = 0; pass < max_passes; ++pass) {
    bool changed = false;
    const Index size = static_cast<Index>(members().size());
    for (Index i = 0; i < n; ++i) {
      if (!in[i] && size >= inst.k) continue;
      in[i] ^= 1;
      const double v = support_value(inst, members());
      if (improves(v, best)) {
        best = v;
        changed = true;
        break;
      }
      in[i] ^= 1;
    }
    if (changed) continue;
    if (size == inst.k && size < n) {
      for (Index i = 0; i < n && !changed; ++i) {
        if (!in[i]) continue;
        for (Index j = 0; j < n && !changed; ++j) {
          if (in[j]) continue;
          in[i] = 0;
          in[j] = 1;
          const double v = support_value(inst, members());
          if (improves(v, best)) {
            best = v;
            changed = true;
          } else {
            in[i] = 1;
            in[j] = 0;
          }
        }
      }
    }
    if (!changed) break;
  }
  return evaluate_support(inst, SupportSet(n, members()));
}

std::string results_csv_header() {
  return "instance_id,model,status,objective,bound,rel_gap,time_s,rounds,cuts_added";
}

std::string results_csv_row(const SolveReport& report) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), ",%s,%.12g,%.12g,%.6g,%.4f,%d,%d", to_string(report.status).c_str(),
                report.objective, report.bound, report.rel_gap, report.time_s, report.rounds,
                report.cuts_added);
  return report.instance_id + "," + report.model + buf;
}

}  // namespace stieltjes
