#include <gtest/gtest.h>

#include <Eigen/LU>
#include <algorithm>
#include <numeric>

#include "common.hpp"
#include "stieltjes/linalg.hpp"
#include "stieltjes/polymatroid.hpp"
#include "stieltjes/random.hpp"

using namespace stieltjes;
using stieltjes::testing::max_abs;
using stieltjes::testing::three_node_q;

TEST(Theta, ThreeNodeEntries) {
  const Matrix q = three_node_q();
  EXPECT_NEAR(theta(q, SupportSet(3, {1}), 1, 1), 1.0 / 3, 1e-15);
  EXPECT_NEAR(theta(q, SupportSet(3, {0, 1, 2}), 0, 2), 4.0 / 3, 1e-14);
  EXPECT_EQ(theta(q, SupportSet(3), 0, 0), 0.0);
}

TEST(BigR, ThreeNodeCoefficient) {
  Matrix want(3, 3);
  want << 0.1, 0.2, 0, 0.2, 0.4, 0, 0, 0, 0;
  EXPECT_LT(max_abs(big_r(three_node_q(), 1, SupportSet(3, {0})) - want), 1e-15);
}

TEST(BigR, EmptySupportIsSingleEntry) {
  Rng rng(1);
  const Matrix q = random_stieltjes(4, rng);
  const Matrix r = big_r(q, 2, SupportSet(4));
  Matrix want = Matrix::Zero(4, 4);
  want(2, 2) = 1.0 / q(2, 2);
  EXPECT_LT(max_abs(r - want), 1e-15);
}

TEST(BigR, MatchesTwoInversions) {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix q = random_stieltjes(5, rng);
    const auto mask = static_cast<std::uint64_t>(rng.uniform_int(0, 31));
    const SupportSet s = SupportSet::from_mask(5, mask);
    for (Index k = 0; k < 5; ++k) {
      if (s.contains(k)) continue;
      const Matrix want = sub_pseudoinverse(q, s.with(k)) - sub_pseudoinverse(q, s);
      EXPECT_LT(max_abs(big_r(q, k, s) - want), 1e-10);
      EXPECT_GE(rho(q, k, s, 0, 0), 0.0);
    }
  }
}

TEST(SeparationOrder, DescendingWithIndexTies) {
  const Vector z{{0.2, 0.7, 0.2, 0.9}};
  EXPECT_EQ(separation_order(z), (std::vector<Index>{3, 1, 0, 2}));
}

TEST(Separate, ThreeNodeCoefficients) {
  const Matrix q = three_node_q();
  const PolymatroidCut cut = separate(q, q.inverse(), Vector{{0.9, 0.5, 0.2}});
  EXPECT_EQ(cut.perm, (std::vector<Index>{0, 1, 2}));
  Matrix r1 = Matrix::Zero(3, 3), r2(3, 3), r3(3, 3);
  r1(0, 0) = 0.5;
  r2 << 0.1, 0.2, 0, 0.2, 0.4, 0, 0, 0, 0;
  r3 << 16.0 / 15, 0.8, 4.0 / 3, 0.8, 0.6, 1, 4.0 / 3, 1, 5.0 / 3;
  EXPECT_LT(max_abs(cut.coefficient(0) - r1), 1e-10);
  EXPECT_LT(max_abs(cut.coefficient(1) - r2), 1e-10);
  EXPECT_LT(max_abs(cut.coefficient(2) - r3), 1e-10);
}

TEST(Separate, DiagonalMatrixDecouples) {
  const Vector d{{2.0, 4.0, 5.0}};
  const Matrix q = d.asDiagonal();
  const Vector z{{0.3, 0.8, 0.1}};
  const PolymatroidCut cut = separate(q, q.inverse(), z);
  const Matrix rhs = cut.rhs(z);
  for (Index i = 0; i < 3; ++i) {
    EXPECT_NEAR(rhs(i, i), z(i) / d(i), 1e-15);
    for (Index j = 0; j < 3; ++j)
      if (i != j) EXPECT_EQ(rhs(i, j), 0.0);
  }
}

TEST(Separate, CoefficientsTelescopeAlongChain) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix q = random_stieltjes(6, rng);
    Vector z(6);
    for (Index i = 0; i < 6; ++i) z(i) = rng.uniform();
    const PolymatroidCut cut = separate(q, q.inverse(), z);
    SupportSet prefix(6);
    Matrix total = Matrix::Zero(6, 6);
    for (Index k = 0; k < 6; ++k) {
      const SupportSet next = prefix.with(cut.perm[k]);
      const Matrix want = sub_pseudoinverse(q, next) - sub_pseudoinverse(q, prefix);
      EXPECT_LT(max_abs(cut.coefficient(k) - want), 1e-10);
      EXPECT_GE(cut.coefficient(k).minCoeff(), -1e-14);
      for (Index r = 0; r < 6; ++r)
        if (!next.contains(r)) EXPECT_EQ(cut.factors(r, k), 0.0);
      total += cut.coefficient(k);
      prefix = next;
    }
    EXPECT_LT((total - q.inverse()).norm(), 1e-9);
  }
}

TEST(Separate, IsMostViolatedAmongAllOrders) {
  Rng rng(4);
  const Matrix q = random_stieltjes(4, rng);
  const Matrix q_inv = q.inverse();
  Vector z(4);
  for (Index i = 0; i < 4; ++i) z(i) = rng.uniform();
  const Matrix best = separate(q, q_inv, z).rhs(z);
  std::vector<Index> perm = {0, 1, 2, 3};
  do {
    const Matrix other = cut_for_permutation(q_inv, perm).rhs(z);
    EXPECT_TRUE(((best.array() - other.array()) <= 1e-12).all());
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(CutViolation, Properties) {
  const Matrix q = three_node_q();
  const Matrix q_inv = q.inverse();
  const Vector e = Vector::Ones(3);
  const PolymatroidCut cut = separate(q, q_inv, Vector{{0.9, 0.5, 0.2}});
  EXPECT_LT(max_abs(cut_violation(cut, e, q_inv)), 1e-14);
  EXPECT_GE(cut_violation(cut, Vector{{0.3, 0.1, 0.6}}, Matrix::Zero(3, 3)).minCoeff(), 0.0);
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix qr = random_stieltjes(6, rng);
    Vector z(6);
    for (Index i = 0; i < 6; ++i) z(i) = rng.uniform();
    const PolymatroidCut c = separate(qr, qr.inverse(), z);
    for (const auto& p : enumerate_extreme_points(qr)) {
      EXPECT_GE(cut_violation(c, p.z, p.w).minCoeff(), -1e-9);
    }
  }
}

TEST(ExtremePoints, ThreeNode) {
  const auto points = enumerate_extreme_points(three_node_q());
  ASSERT_EQ(points.size(), 8u);
  EXPECT_LT(max_abs(points[7].w - stieltjes::testing::three_node_q_inv()), 1e-14);
  EXPECT_NEAR(points[3].w(0, 1), 0.2, 1e-15);
  EXPECT_EQ(points[0].w.norm(), 0.0);
}

TEST(ExtremePoints, SingleNodeAndEqualities) {
  const auto one = enumerate_extreme_points(Matrix::Constant(1, 1, 4.0));
  ASSERT_EQ(one.size(), 2u);
  EXPECT_EQ(one[0].w(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(one[1].w(0, 0), 0.25);
  Rng rng(6);
  const Matrix q = random_stieltjes(4, rng);
  for (const auto& p : enumerate_extreme_points(q)) {
    for (Index i = 0; i < 4; ++i) EXPECT_NEAR(q.row(i).dot(p.w.row(i)), p.z(i), 1e-12);
  }
  EXPECT_THROW(enumerate_extreme_points(Matrix::Identity(17, 17)), TooLarge);
}

TEST(FacetFixture, PointsAreTightAndAffinelyIndependent) {
  Rng rng(7);
  const Matrix q = random_stieltjes(4, rng);
  const std::vector<Index> perm = {2, 0, 3, 1};
  const PolymatroidCut cut = cut_for_permutation(q.inverse(), perm);
  const auto points = facet_fixture_points(q, 1, 3, perm);
  ASSERT_FALSE(points.empty());
  EXPECT_LT(max_abs(points.front().point.w - q.inverse()), 1e-12);
  std::vector<Vector> coords;
  for (const auto& f : points) {
    EXPECT_NEAR(cut_violation(cut, f.point.z, f.point.w)(1, 3), 0.0, 1e-10);
    Vector v(4 + 16);
    v << f.point.z, f.point.w.reshaped();
    coords.push_back(v);
  }
  // the row-3 point with the full chain duplicates row 1
  EXPECT_LT((coords.back() - coords.front()).norm(), 1e-12);
  Matrix diff(20, Index(coords.size()) - 2);
  for (Index c = 1; c + 1 < Index(coords.size()); ++c) diff.col(c - 1) = coords[c] - coords[0];
  Eigen::FullPivLU<Matrix> lu(diff);
  EXPECT_EQ(lu.rank(), diff.cols());
}

TEST(CutJson, RoundTrip) {
  Rng rng(8);
  const Matrix q = random_stieltjes(5, rng);
  const PolymatroidCut cut = separate(q, q.inverse(), Vector::LinSpaced(5, 0.1, 0.9));
  const PolymatroidCut back = cut_from_json(cut_to_json(cut));
  EXPECT_EQ(back.perm, cut.perm);
  EXPECT_LT(max_abs(back.factors - cut.factors), 1e-15);
  EXPECT_THROW(cut_from_json("{\"perm\": [0]}"), ParseError);
}
