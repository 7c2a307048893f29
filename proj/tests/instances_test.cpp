#include <gtest/gtest.h>

#include <Eigen/LU>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "common.hpp"
#include "stieltjes/errors.hpp"
#include "stieltjes/instances.hpp"
#include "stieltjes/switching.hpp"

using namespace stieltjes;
using stieltjes::testing::max_abs;

TEST(Rng, ReproducibleStreams) {
  Rng a(42, 3), b(42, 3), c(42, 4);
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
  }
  Rng d(1);
  for (int i = 0; i < 1000; ++i) {
    const auto v = d.uniform_int(2, 5);
    EXPECT_GE(v, 2);
    EXPECT_LE(v, 5);
  }
}

TEST(GridQuadratic, TwoByTwo) {
  Matrix want(4, 4);
  want << 3, -1, -1, 0, -1, 3, 0, -1, -1, 0, 3, -1, 0, -1, -1, 3;
  EXPECT_EQ(grid_quadratic(2, 1.0), want);
}

TEST(GridQuadratic, EdgeCountAndStieltjes) {
  const Matrix q = grid_quadratic(10, 2.0);
  int edges = 0;
  for (Index i = 0; i < 100; ++i)
    for (Index j = 0; j < 100; ++j)
      if (i != j && q(i, j) != 0.0) ++edges;
  EXPECT_EQ(edges, 2 * 180);  // each undirected edge appears twice
  EXPECT_TRUE(is_stieltjes(q));
}

TEST(SpikePrecision, Structure) {
  const Matrix& t = spike_precision();
  ASSERT_EQ(t.rows(), 9);
  EXPECT_EQ(t.row(0), (Eigen::RowVectorXd(9) << 4, -1, 0, -1, 0, 0, 0, 0, 0).finished());
  EXPECT_TRUE(is_stieltjes(t));
  EXPECT_GE(t.inverse().minCoeff(), 0.0);
}

TEST(TrueSignal, ThreeSpikesOnGrid) {
  GridSpec spec;
  spec.m = 10;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    spec.seed = seed;
    const TrueSignal s = true_signal(spec);
    ASSERT_EQ(s.centers.size(), 3u);
    EXPECT_GE(s.x.minCoeff(), 0.0);
    bool disjoint = true;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        if (std::abs(s.centers[a][0] - s.centers[b][0]) < 3 &&
            std::abs(s.centers[a][1] - s.centers[b][1]) < 3)
          disjoint = false;
    const auto nnz = (s.x.array() != 0.0).count();
    if (disjoint) EXPECT_EQ(nnz, 27);
    EXPECT_LE(nnz, 27);
  }
}

TEST(Observe, NoiseFreeAndHalfNormalMean) {
  TrueSignal s;
  s.m = 3;
  s.x = Vector::LinSpaced(9, 0.0, 2.0);
  Rng rng(1);
  EXPECT_EQ(observe(s, 0.0, rng), s.x);

  TrueSignal zero;
  zero.m = 100;
  zero.x = Vector::Zero(10000);
  Rng r1(7), r2(7);
  const Vector y = observe(zero, 1.0, r1);
  EXPECT_EQ(y, observe(zero, 1.0, r2));
  EXPECT_NEAR(y.mean(), std::sqrt(2.0 / M_PI), 0.02);
}

TEST(Assemble, ConstrainedTenByTen) {
  GridSpec spec;
  spec.m = 10;
  spec.sigma2 = 2.0;
  spec.mu = 0.0;
  spec.k = 20;
  const Instance inst = assemble(spec);
  EXPECT_EQ(inst.n(), 100);
  EXPECT_EQ(inst.k, 20);
  EXPECT_TRUE(inst.cardinality_active());
  EXPECT_LE(inst.a.maxCoeff(), 0.0);
  EXPECT_EQ(inst.meta.id, instance_id(spec));
  spec.k = -1;
  EXPECT_EQ(assemble(spec).k, 100);
}

TEST(InstanceJson, RoundTrip) {
  GridSpec spec;
  spec.m = 10;
  spec.seed = 3;
  const Instance inst = assemble(spec);
  const std::string text = write_json(inst);
  const Instance back = read_json(text);
  EXPECT_EQ(back.q, inst.q);
  EXPECT_EQ(back.a, inst.a);
  EXPECT_EQ(back.c, inst.c);
  EXPECT_EQ(back.k, inst.k);
  EXPECT_EQ(back.constant, inst.constant);
  EXPECT_EQ(write_json(back), text);
}

TEST(InstanceJson, ParseErrorsNameTheField) {
  EXPECT_THROW(read_json("not json"), ParseError);
  const std::string good = write_json(stieltjes::testing::three_node_instance());
  auto mutate = [&](const std::string& from, const std::string& to) {
    std::string s = good;
    const auto pos = s.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    return s.replace(pos, from.size(), to);
  };
  try {
    read_json(mutate("\"k\": 3", "\"k\": 7"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "k");
  }
  EXPECT_THROW(read_json(mutate("\"n\": 3", "\"n\": 4")), ParseError);
}

TEST(InstanceFiles, SaveLoadAndExample) {
  const auto dir = std::filesystem::temp_directory_path() / "stieltjes_instances_test";
  std::filesystem::create_directories(dir);
  const Instance inst = stieltjes::testing::three_node_instance();
  save_instance(inst, dir / "three.json");
  const Instance back = load_instance(dir / "three.json");
  EXPECT_EQ(back.q, inst.q);
  const Instance example = load_instance(std::filesystem::path(STIELTJES_TEST_DATA) / "example1.json");
  EXPECT_EQ(example.q, stieltjes::testing::three_node_q());
  EXPECT_EQ(example.a, inst.a);
  write_grid_csv(Vector::LinSpaced(4, 1, 4), 2, dir / "grid.csv");
  std::ifstream in(dir / "grid.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "1,2\n3,4\n");
  std::filesystem::remove_all(dir);
}
