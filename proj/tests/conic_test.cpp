#include <gtest/gtest.h>

#include <Eigen/LU>

#include "common.hpp"
#include "stieltjes/conic.hpp"
#include "stieltjes/linalg.hpp"

using namespace stieltjes;

namespace {

ConicProblem scalar_lower_bound() {
  // min x  s.t. -x + s = -1, s >= 0
  ConicProblem p;
  p.num_vars = 1;
  p.objective = Vector::Ones(1);
  p.entries = {{0, 0, -1.0}};
  p.rhs = Vector::Constant(1, -1.0);
  p.cones = {{ConeKind::kNonneg, 1}};
  return p;
}

}  // namespace

TEST(Packing, SqrtTwoLowerColumnMajor) {
  Matrix m(3, 3);
  m << 1, 2, 3, 2, 4, 5, 3, 5, 6;
  const Vector v = pack_psd(m);
  ASSERT_EQ(v.size(), 6);
  EXPECT_DOUBLE_EQ(v(0), 1.0);
  EXPECT_DOUBLE_EQ(v(1), 2.0 * kSqrt2);
  EXPECT_DOUBLE_EQ(v(2), 3.0 * kSqrt2);
  EXPECT_DOUBLE_EQ(v(3), 4.0);
  EXPECT_DOUBLE_EQ(v(4), 5.0 * kSqrt2);
  EXPECT_DOUBLE_EQ(v(5), 6.0);
  EXPECT_EQ(psd_packed_index(3, 2, 1), 4);
  EXPECT_EQ(psd_packed_index(3, 1, 2), 4);
  EXPECT_LT(stieltjes::testing::max_abs(unpack_psd(v, 3) - m), 1e-15);
  Matrix b = Matrix::Identity(3, 3) + 0.5 * m;
  EXPECT_NEAR(pack_psd(m).dot(pack_psd(b)), (m * b).trace(), 1e-12);
}

TEST(Projection, Cones) {
  Vector soc{{1.0, 3.0, 4.0}};
  project_onto_cone({ConeKind::kSecondOrder, 3}, soc);
  EXPECT_NEAR(soc(0), 3.0, 1e-14);
  EXPECT_NEAR(soc.tail(2).norm(), 3.0, 1e-14);
  Vector nn{{-1.0, 2.0}};
  project_onto_cone({ConeKind::kNonneg, 2}, nn);
  EXPECT_EQ(nn, (Vector{{0.0, 2.0}}));
  Matrix m(2, 2);
  m << 2, 0, 0, -1;
  Vector packed = pack_psd(m);
  project_onto_cone({ConeKind::kPsd, 2}, packed);
  EXPECT_NEAR(packed(2), 0.0, 1e-14);
}

TEST(Solve, ScalarLowerBound) {
  const ConicSolution s = solve(scalar_lower_bound());
  EXPECT_EQ(s.status, ConicStatus::kOptimal);
  EXPECT_NEAR(s.x(0), 1.0, 1e-5);
  EXPECT_NEAR(s.objective, 1.0, 1e-5);
  EXPECT_LE(s.primal_residual, 1e-6);
  EXPECT_LE(s.dual_residual, 1e-6);
  EXPECT_LE(s.gap, 1e-6);
}

TEST(Solve, TwoByTwoPsd) {
  // min t s.t. [[1, 2], [2, t]] psd; variable t enters the (1,1) entry.
  ConicProblem p;
  p.num_vars = 1;
  p.objective = Vector::Ones(1);
  p.rhs = pack_psd((Matrix(2, 2) << 1, 2, 2, 0).finished());
  p.entries = {{int(psd_packed_index(2, 1, 1)), 0, -1.0}};
  p.cones = {{ConeKind::kPsd, 2}};
  const ConicSolution s = solve(p);
  EXPECT_EQ(s.status, ConicStatus::kOptimal);
  EXPECT_NEAR(s.x(0), 4.0, 1e-4);
  const Matrix slack = unpack_psd(s.s, 2);
  EXPECT_GE(min_eigenvalue(slack), -1e-5);
  EXPECT_LE(std::abs(s.s.dot(s.y)) / (1 + std::abs(s.objective)), 1e-5);
}

TEST(Solve, PerspectiveAtUnitIndicator) {
  // min t s.t. |(2x, t - z)| <= t + z with x = 3, z = 1 fixed by equalities.
  ConicProblem p;
  p.num_vars = 3;  // x, z, t
  p.objective = Vector{{0.0, 0.0, 1.0}};
  p.entries = {{0, 0, 1.0}, {1, 1, 1.0},                           // zero cone
               {2, 2, -1.0}, {2, 1, -1.0},                         // t + z
               {3, 0, -2.0},                                       // 2x
               {4, 2, -1.0}, {4, 1, 1.0}};                         // t - z
  p.rhs = Vector{{3.0, 1.0, 0.0, 0.0, 0.0}};
  p.cones = {{ConeKind::kZero, 2}, {ConeKind::kSecondOrder, 3}};
  const ConicSolution s = solve(p);
  EXPECT_EQ(s.status, ConicStatus::kOptimal);
  EXPECT_NEAR(s.objective, 9.0, 1e-4);
}

TEST(Solve, Deterministic) {
  const ConicSolution a = solve(scalar_lower_bound());
  const ConicSolution b = solve(scalar_lower_bound());
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.x, b.x);
}

TEST(Solve, InfeasibleAndUnbounded) {
  ConicProblem infeasible = scalar_lower_bound();  // x >= 1 and x <= 0
  infeasible = add_cut_rows(infeasible, {LinearRow{{{0, 1.0}}, 0.0}});
  const ConicSolution a = solve(infeasible);
  EXPECT_EQ(a.status, ConicStatus::kInfeasibleLike);
  EXPECT_EQ(a.certificate, Certificate::kPrimalInfeasible);

  ConicProblem unbounded = scalar_lower_bound();
  unbounded.objective(0) = -1.0;
  const ConicSolution b = solve(unbounded);
  EXPECT_EQ(b.status, ConicStatus::kInfeasibleLike);
  EXPECT_EQ(b.certificate, Certificate::kUnbounded);
}

TEST(AddCutRows, EmptyRowsChangeNothing) {
  const ConicProblem p = scalar_lower_bound();
  const ConicProblem q = add_cut_rows(p, {});
  EXPECT_EQ(q.num_rows(), p.num_rows());
  EXPECT_EQ(solve(q).iterations, solve(p).iterations);
}

TEST(AddCutRows, ImpliedAndViolatedRows) {
  const ConicProblem p = scalar_lower_bound();
  const ConicSolution base = solve(p);
  // x >= 0.5 is implied
  const ConicSolution implied = solve(add_cut_rows(p, {LinearRow{{{0, -1.0}}, -0.5}}));
  EXPECT_NEAR(implied.objective, base.objective, 1e-5);
  // x >= 2 cuts the optimum off
  const ConicProblem tighter = add_cut_rows(p, {LinearRow{{{0, -1.0}}, -2.0}});
  const WarmStart warm = pad_warm_start(base, std::vector<LinearRow>{LinearRow{{{0, -1.0}}, -2.0}});
  const ConicSolution cut = solve(tighter, {}, &warm);
  EXPECT_GE(cut.objective, base.objective - 1e-6);
  EXPECT_NEAR(cut.objective, 2.0, 1e-5);
}

TEST(ConicSolver, UpdateRhsReusesFactorization) {
  ConicSolver solver(scalar_lower_bound());
  EXPECT_NEAR(solver.solve().objective, 1.0, 1e-5);
  solver.update_rhs(Vector::Constant(1, -3.0));
  EXPECT_NEAR(solver.solve().objective, 3.0, 1e-5);
}

TEST(ConicProblem, ValidateRejectsBadShapes) {
  ConicProblem p = scalar_lower_bound();
  p.cones = {{ConeKind::kNonneg, 2}};
  EXPECT_THROW(p.validate(), std::invalid_argument);
}
