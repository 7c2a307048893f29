#include "stieltjes/conic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <cmath>
#include <stdexcept>

#include "stieltjes/linalg.hpp"

namespace stieltjes {

Index psd_packed_size(Index dim) { return dim * (dim + 1) / 2; }

Index psd_packed_index(Index dim, Index i, Index j) {
  if (i < j) std::swap(i, j);
  // Columns 0..j-1 hold dim + (dim-1) + ... + (dim-j+1) entries.
  return j * dim - j * (j - 1) / 2 + (i - j);
}

Vector pack_psd(const Matrix& m) {
  const Index dim = m.rows();
  Vector out(psd_packed_size(dim));
  Index r = 0;
  for (Index j = 0; j < dim; ++j) {
    out(r++) = m(j, j);
    for (Index i = j + 1; i < dim; ++i) out(r++) = kSqrt2 * m(i, j);
  }
  return out;
}

Matrix unpack_psd(const Eigen::Ref<const Vector>& packed, Index dim) {
  Matrix m(dim, dim);
  Index r = 0;
  for (Index j = 0; j < dim; ++j) {
    m(j, j) = packed(r++);
    for (Index i = j + 1; i < dim; ++i) {
      m(i, j) = packed(r++) / kSqrt2;
      m(j, i) = m(i, j);
    }
  }
  return m;
}

void project_onto_cone(const Cone& cone, Eigen::Ref<Vector> v) {
  switch (cone.kind) {
    case ConeKind::kZero:
      v.setZero();
      return;
    case ConeKind::kNonneg:
      v = v.cwiseMax(0.0);
      return;
    case ConeKind::kSecondOrder: {
      const double t = v(0);
      const double norm = v.tail(v.size() - 1).norm();
      if (norm <= t) return;
      if (norm <= -t) {
        v.setZero();
        return;
      }
      const double scale = 0.5 * (t + norm);
      v.tail(v.size() - 1) *= scale / norm;
      v(0) = scale;
      return;
    }
    case ConeKind::kPsd: {
      const Matrix m = unpack_psd(v, cone.size);
      Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
      if (eig.info() != Eigen::Success) throw NoConvergence("PSD projection failed");
      if (eig.eigenvalues()(0) >= 0.0) return;
      const Vector clipped = eig.eigenvalues().cwiseMax(0.0);
      const Matrix p = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
      Index r = 0;
      for (Index j = 0; j < cone.size; ++j) {
        v(r++) = p(j, j);
        for (Index i = j + 1; i < cone.size; ++i) v(r++) = kSqrt2 * 0.5 * (p(i, j) + p(j, i));
      }
      return;
    }
  }
}

Index ConicProblem::num_rows() const {
  Index rows = 0;
  for (const Cone& cone : cones) rows += cone.rows();
  return rows;
}

void ConicProblem::validate() const {
  if (objective.size() != num_vars) throw std::invalid_argument("ConicProblem: objective size");
  const Index rows = num_rows();
  if (rhs.size() != rows) throw std::invalid_argument("ConicProblem: rhs size != cone rows");
  for (const auto& t : entries) {
    if (t.row() < 0 || t.row() >= rows || t.col() < 0 || t.col() >= num_vars) {
      throw std::invalid_argument("ConicProblem: entry out of range");
    }
  }
  for (const Cone& cone : cones) {
    if (cone.size < 0 || (cone.kind == ConeKind::kSecondOrder && cone.size < 1)) {
      throw std::invalid_argument("ConicProblem: bad cone size");
    }
  }
}

Eigen::SparseMatrix<double> ConicProblem::matrix() const {
  Eigen::SparseMatrix<double> a(num_rows(), num_vars);
  a.setFromTriplets(entries.begin(), entries.end());
  return a;
}

ConicProblem add_cut_rows(const ConicProblem& problem, const std::vector<LinearRow>& rows) {
  ConicProblem out = problem;
  if (rows.empty()) return out;
  const Index base = problem.num_rows();
  out.rhs.conservativeResize(base + static_cast<Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Index row = base + static_cast<Index>(r);
    for (const auto& [col, value] : rows[r].coeffs) out.entries.emplace_back(row, col, value);
    out.rhs(row) = rows[r].rhs;
  }
  out.cones.push_back({ConeKind::kNonneg, static_cast<Index>(rows.size())});
  return out;
}

WarmStart pad_warm_start(const ConicSolution& previous, Index extra_rows) {
  WarmStart warm{previous.x, previous.s, previous.y};
  const Index m = previous.s.size();
  warm.s.conservativeResize(m + extra_rows);
  warm.y.conservativeResize(m + extra_rows);
  warm.s.tail(extra_rows).setZero();
  warm.y.tail(extra_rows).setZero();
  warm.rho = previous.rho;
  return warm;
}

WarmStart pad_warm_start(const ConicSolution& previous, const std::vector<LinearRow>& rows) {
  WarmStart warm = pad_warm_start(previous, static_cast<Index>(rows.size()));
  const Index m = previous.s.size();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    double slack = rows[r].rhs;
    for (const auto& [col, value] : rows[r].coeffs) slack -= value * previous.x(col);
    warm.s(m + static_cast<Index>(r)) = std::max(slack, 0.0);
  }
  return warm;
}

std::string to_string(ConicStatus status) {
  switch (status) {
    case ConicStatus::kOptimal:
      return "optimal";
    case ConicStatus::kMaxIter:
      return "max_iter";
    case ConicStatus::kInfeasibleLike:
      return "infeasible_like";
  }
  return "unknown";
}

namespace {

double inf_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

struct ConicSolver::Impl {
  ConicProblem problem;
  ConicSettings settings;
  Eigen::SparseMatrix<double> a;         // original
  Eigen::SparseMatrix<double> a_scaled;  // E A D
  Vector col_scale;                      // D
  Vector row_scale;                      // E
  double cost_scale = 1.0;               // gamma
  double rhs_scale = 1.0;                // delta
  Vector c_scaled;
  Vector b_scaled;
  std::vector<Index> cone_offset;
  Vector is_zero_row;
  double rho = 0.1;
  Vector rho_rows;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  bool pattern_ready = false;

  void equilibrate();
  void set_rho(double value);
  void factorize();
  void project(Vector& v) const;
  double cone_distance(const Vector& v, bool dual) const;
};

void ConicSolver::Impl::equilibrate() {
  const Index m = a.rows();
  const Index n = a.cols();
  row_scale = Vector::Ones(m);
  col_scale = Vector::Ones(n);
  a_scaled = a;
  if (settings.equilibrate && m > 0 && n > 0) {
    for (int pass = 0; pass < 15; ++pass) {
      Vector row_norm = Vector::Zero(m);
      Vector col_norm = Vector::Zero(n);
      for (Index k = 0; k < a_scaled.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(a_scaled, k); it; ++it) {
          const double v = std::abs(it.value());
          row_norm(it.row()) = std::max(row_norm(it.row()), v);
          col_norm(it.col()) = std::max(col_norm(it.col()), v);
        }
      }
      for (std::size_t c = 0; c < problem.cones.size(); ++c) {
        const Cone& cone = problem.cones[c];
        if (cone.kind == ConeKind::kSecondOrder || cone.kind == ConeKind::kPsd) {
          auto block = row_norm.segment(cone_offset[c], cone.rows());
          if (block.size() > 0) block.setConstant(block.maxCoeff());
        }
      }
      Vector e(m);
      Vector d(n);
      for (Index i = 0; i < m; ++i) {
        e(i) = row_norm(i) > 1e-8 ? std::clamp(1.0 / std::sqrt(row_norm(i)), 1e-4, 1e4) : 1.0;
      }
      for (Index j = 0; j < n; ++j) {
        d(j) = col_norm(j) > 1e-8 ? std::clamp(1.0 / std::sqrt(col_norm(j)), 1e-4, 1e4) : 1.0;
      }
      a_scaled = e.asDiagonal() * a_scaled * d.asDiagonal();
      row_scale = row_scale.cwiseProduct(e);
      col_scale = col_scale.cwiseProduct(d);
    }
  }
  c_scaled = col_scale.cwiseProduct(problem.objective);
  cost_scale = 1.0 / std::max(1.0, inf_norm(c_scaled));
  c_scaled *= cost_scale;
}

void ConicSolver::Impl::set_rho(double value) {
  rho = value;
  rho_rows = Vector::Constant(a.rows(), rho);
  for (Index i = 0; i < a.rows(); ++i) {
    if (is_zero_row(i) > 0.5) rho_rows(i) = 1e3 * rho;
  }
}

void ConicSolver::Impl::factorize() {
  const Index n = a.cols();
  Eigen::SparseMatrix<double> identity(n, n);
  identity.setIdentity();
  Eigen::SparseMatrix<double> system =
      Eigen::SparseMatrix<double>(a_scaled.transpose() * rho_rows.asDiagonal() * a_scaled) +
      settings.sigma * identity;
  if (!pattern_ready) {
    ldlt.analyzePattern(system);
    pattern_ready = true;
  }
  ldlt.factorize(system);
  if (ldlt.info() != Eigen::Success) throw NoConvergence("conic: KKT factorization failed");
}

void ConicSolver::Impl::project(Vector& v) const {
  for (std::size_t c = 0; c < problem.cones.size(); ++c) {
    const Cone& cone = problem.cones[c];
    project_onto_cone(cone, v.segment(cone_offset[c], cone.rows()));
  }
}

// Infinity-norm distance of v to K (dual == false) or K* (dual == true).
double ConicSolver::Impl::cone_distance(const Vector& v, bool dual) const {
  double worst = 0.0;
  for (std::size_t c = 0; c < problem.cones.size(); ++c) {
    const Cone& cone = problem.cones[c];
    if (dual && cone.kind == ConeKind::kZero) continue;
    Vector block = v.segment(cone_offset[c], cone.rows());
    Vector projected = block;
    project_onto_cone(cone, projected);
    worst = std::max(worst, inf_norm(projected - block));
  }
  return worst;
}

ConicSolver::ConicSolver(ConicProblem problem, ConicSettings settings)
    : impl_(std::make_unique<Impl>()) {
  problem.validate();
  impl_->problem = std::move(problem);
  impl_->settings = settings;
  Impl& d = *impl_;
  d.a = d.problem.matrix();
  d.cone_offset.reserve(d.problem.cones.size());
  d.is_zero_row = Vector::Zero(d.a.rows());
  Index offset = 0;
  for (const Cone& cone : d.problem.cones) {
    d.cone_offset.push_back(offset);
    if (cone.kind == ConeKind::kZero) d.is_zero_row.segment(offset, cone.rows()).setOnes();
    offset += cone.rows();
  }
  d.equilibrate();
  update_rhs(d.problem.rhs);
  d.set_rho(settings.rho);
  d.factorize();
}

ConicSolver::~ConicSolver() = default;
ConicSolver::ConicSolver(ConicSolver&&) noexcept = default;
ConicSolver& ConicSolver::operator=(ConicSolver&&) noexcept = default;

const ConicProblem& ConicSolver::problem() const { return impl_->problem; }
const ConicSettings& ConicSolver::settings() const { return impl_->settings; }

void ConicSolver::update_rhs(const Vector& rhs) {
  Impl& d = *impl_;
  if (rhs.size() != d.a.rows()) throw std::invalid_argument("update_rhs: size mismatch");
  d.problem.rhs = rhs;
  d.b_scaled = d.row_scale.cwiseProduct(rhs);
  d.rhs_scale = 1.0 / std::max(1.0, inf_norm(d.b_scaled));
  d.b_scaled *= d.rhs_scale;
}

ConicSolution ConicSolver::solve(const WarmStart* warm) {
  Impl& d = *impl_;
  const ConicSettings& st = d.settings;
  const Index m = d.a.rows();
  const Index n = d.a.cols();
  const Vector& b = d.problem.rhs;
  const Vector& c = d.problem.objective;

  Vector x = Vector::Zero(n);
  Vector s = Vector::Zero(m);
  Vector y = Vector::Zero(m);
  if (warm != nullptr && warm->x.size() == n && warm->s.size() == m && warm->y.size() == m) {
    x = d.rhs_scale * warm->x.cwiseQuotient(d.col_scale);
    s = d.rhs_scale * warm->s.cwiseProduct(d.row_scale);
    y = d.cost_scale * warm->y.cwiseQuotient(d.row_scale);
    if (warm->rho > 0.0 && warm->rho != d.rho) {
      d.set_rho(warm->rho);
      d.factorize();
    }
  }

  ConicSolution sol;
  auto unscale = [&](const Vector& xs, const Vector& ss, const Vector& ys, Vector& xo, Vector& so,
                     Vector& yo) {
    xo = d.col_scale.cwiseProduct(xs) / d.rhs_scale;
    so = ss.cwiseQuotient(d.row_scale) / d.rhs_scale;
    yo = d.row_scale.cwiseProduct(ys) / d.cost_scale;
  };
  auto evaluate = [&](const Vector& xo, const Vector& so, const Vector& yo) {
    const Vector ax = d.a * xo;
    const Vector aty = d.a.transpose() * yo;
    const double cx = c.dot(xo);
    const double by = b.dot(yo);
    sol.primal_residual =
        inf_norm(ax + so - b) / (1.0 + std::max({inf_norm(ax), inf_norm(so), inf_norm(b)}));
    sol.dual_residual = inf_norm(aty + c) / (1.0 + std::max(inf_norm(aty), inf_norm(c)));
    sol.gap = std::abs(cx + by) / (1.0 + std::abs(cx) + std::abs(by));
    sol.objective = cx + d.problem.offset;
    sol.dual_objective = -by + d.problem.offset;
  };

  Vector x_prev = x;
  Vector y_prev = y;
  Vector xo;
  Vector so;
  Vector yo;
  int suspect_unbounded = 0;
  int suspect_infeasible = 0;
  int it = 0;
  sol.status = ConicStatus::kMaxIter;
  for (it = 1; it <= st.max_iter; ++it) {
    const bool check = it % st.check_every == 0 || it == st.max_iter;
    if (check) {
      x_prev = x;
      y_prev = y;
    }
    const Vector rhs =
        st.sigma * x - d.c_scaled -
        d.a_scaled.transpose() * (y + d.rho_rows.cwiseProduct(s - d.b_scaled));
    x = d.ldlt.solve(rhs);
    const Vector ax = d.a_scaled * x;
    const Vector ax_relaxed = st.alpha * ax + (1.0 - st.alpha) * (d.b_scaled - s);
    Vector v = d.b_scaled - ax_relaxed - y.cwiseQuotient(d.rho_rows);
    s = v;
    d.project(s);
    y = d.rho_rows.cwiseProduct(s - v);

    if (!check) continue;
    unscale(x, s, y, xo, so, yo);
    evaluate(xo, so, yo);
    if (st.trace != nullptr) {
      char line[160];
      std::snprintf(line, sizeof(line), "  it %6d  pres %.2e  dres %.2e  gap %.2e  obj %.9g  rho %.2e\n", it,
                    sol.primal_residual, sol.dual_residual, sol.gap, sol.objective, d.rho);
      *st.trace << line;
    }
    if (sol.primal_residual <= st.tol && sol.dual_residual <= st.tol && sol.gap <= st.tol) {
      sol.status = ConicStatus::kOptimal;
      break;
    }

    // Certificates from successive differences.
    const Vector dx = d.col_scale.cwiseProduct(x - x_prev) / d.rhs_scale;
    const Vector dy = d.row_scale.cwiseProduct(y - y_prev) / d.cost_scale;
    const double eps = st.infeasibility_tol;
    const double nx = inf_norm(dx);
    bool unbounded = false;
    if (nx > 1e-12) {
      const Vector dir = dx / nx;
      const Vector adir = d.a * dir;
      unbounded = c.dot(dir) < -eps * std::max(1.0, inf_norm(c)) &&
                  d.cone_distance(-adir, false) <= eps * std::max(1.0, inf_norm(adir));
    }
    suspect_unbounded = unbounded ? suspect_unbounded + 1 : 0;
    const double ny = inf_norm(dy);
    bool infeasible = false;
    if (ny > 1e-12) {
      const Vector dir = dy / ny;
      infeasible = inf_norm(d.a.transpose() * dir) <= eps && b.dot(dir) < -eps &&
                   d.cone_distance(dir, true) <= eps;
    }
    suspect_infeasible = infeasible ? suspect_infeasible + 1 : 0;
    if (suspect_unbounded >= 3 || suspect_infeasible >= 3) {
      sol.status = ConicStatus::kInfeasibleLike;
      sol.certificate =
          suspect_unbounded >= 3 ? Certificate::kUnbounded : Certificate::kPrimalInfeasible;
      break;
    }

    if (st.adaptive_rho) {
      const Vector as = d.a_scaled * x;
      const Vector aty = d.a_scaled.transpose() * y;
      const double prim = inf_norm(as + s - d.b_scaled) /
                          std::max({inf_norm(as), inf_norm(s), inf_norm(d.b_scaled), 1e-10});
      const double dual = inf_norm(aty + d.c_scaled) /
                          std::max({inf_norm(aty), inf_norm(d.c_scaled), 1e-10});
      if (prim > 0.0 && dual > 0.0) {
        const double proposal = std::clamp(d.rho * std::sqrt(prim / dual), 1e-6, 1e6);
        if (proposal > 5.0 * d.rho || proposal < 0.2 * d.rho) {
          d.set_rho(proposal);
          d.factorize();
        }
      }
    }
  }
  sol.iterations = std::min(it, st.max_iter);
  sol.rho = d.rho;
  unscale(x, s, y, sol.x, sol.s, sol.y);
  evaluate(sol.x, sol.s, sol.y);
  if (sol.status == ConicStatus::kMaxIter && sol.primal_residual <= st.tol &&
      sol.dual_residual <= st.tol && sol.gap <= st.tol) {
    sol.status = ConicStatus::kOptimal;
  }
  return sol;
}

ConicSolution solve(const ConicProblem& problem, const ConicSettings& settings,
                    const WarmStart* warm) {
  ConicSolver solver(problem, settings);
  return solver.solve(warm);
}

void write_problem_text(const ConicProblem& problem, std::ostream& out) {
  out.precision(17);
  out << problem.num_vars << ' ' << problem.num_rows() << '\n';
  out << "offset " << problem.offset << '\n';
  for (Index j = 0; j < problem.num_vars; ++j) {
    if (problem.objective(j) != 0.0) out << "c " << j << ' ' << problem.objective(j) << '\n';
  }
  for (const Cone& cone : problem.cones) {
    const char* kind = cone.kind == ConeKind::kZero     ? "zero"
                       : cone.kind == ConeKind::kNonneg ? "nonneg"
                       : cone.kind == ConeKind::kSecondOrder ? "soc"
                                                             : "psd";
    out << "cone " << kind << ' ' << cone.size << '\n';
  }
  for (const auto& t : problem.entries) out << t.row() << ' ' << t.col() << ' ' << t.value() << '\n';
  for (Index i = 0; i < problem.rhs.size(); ++i) {
    if (problem.rhs(i) != 0.0) out << "b " << i << ' ' << problem.rhs(i) << '\n';
  }
}

}  // namespace stieltjes
