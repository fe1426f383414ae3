#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "atsp/datasets.hpp"
#include "atsp/jones.hpp"
#include "atsp/pipeline.hpp"

using namespace atsp;

namespace {

DatasetSpec spec(DatasetKind kind, int size) {
  DatasetSpec s;
  s.kind = kind;
  s.size = size;
  return s;
}

}  // namespace

TEST(Koch, BaseAndLengths) {
  auto k0 = generate(spec(DatasetKind::koch, 0));
  EXPECT_EQ(k0.points.size(), 2u);
  EXPECT_EQ(k0.curve->length(), 1.0);
  for (int k = 1; k <= 6; ++k) {
    auto ds = generate(spec(DatasetKind::koch, k));
    EXPECT_EQ(ds.points.size(), (std::size_t{1} << (2 * k)) + 1);
    EXPECT_NEAR(ds.curve->length(), std::pow(4.0 / 3.0, k), 1e-9) << k;
    EXPECT_NEAR(diameter(ds.points), 1.0, 1e-12);
  }
}

TEST(Cantor4, FirstIteration) {
  auto ds = generate(spec(DatasetKind::cantor4, 1));
  ASSERT_EQ(ds.points.size(), 4u);
  std::vector<double> xs;
  for (std::size_t i = 0; i < 4; ++i) xs.push_back(ds.points[i][0]);
  EXPECT_EQ(xs, (std::vector<double>{0.0, 0.25, 0.75, 1.0}));
  EXPECT_FALSE(ds.curve.has_value());
  EXPECT_EQ(generate(spec(DatasetKind::cantor4, 5)).points.size(), 64u);
}

TEST(Datasets, ShapesAndDimensions) {
  auto circle = generate(spec(DatasetKind::circle, 64));
  EXPECT_EQ(circle.curve->size(), 65u);
  auto walk = generate(spec(DatasetKind::random_walk, 100));
  EXPECT_EQ(walk.points.dim(), 3u);
  EXPECT_NEAR(walk.curve->length(), 99 * 0.05, 1e-12);
  auto padded = spec(DatasetKind::spiral, 50);
  padded.dim = 5;
  EXPECT_EQ(generate(padded).points.dim(), 5u);
  EXPECT_THROW(generate(spec(DatasetKind::circle, 2)), invalid_input);
  EXPECT_THROW(generate(spec(DatasetKind::koch, 12)), invalid_input);
  EXPECT_THROW(parse_dataset_kind("sierpinski"), invalid_input);
  EXPECT_EQ(parse_dataset_kind("uniform_square"), DatasetKind::uniform_square);
}

TEST(Datasets, DeterministicPerSeed) {
  auto a = spec(DatasetKind::uniform_square, 50);
  auto b = a;
  EXPECT_EQ(generate(a).points.flat(), generate(b).points.flat());
  b.seed = 2;
  EXPECT_NE(generate(a).points.flat(), generate(b).points.flat());
}

TEST(Embedding, IdentityIsExact) {
  auto ds = generate(spec(DatasetKind::koch, 3));
  auto same = embed_isometric(ds.points, 2, 0);
  EXPECT_EQ(same.flat(), ds.points.flat());
}

TEST(Embedding, PreservesDistances) {
  PointSet k(2);
  for (auto p : {Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}}) k.push_back(p);
  auto big = embed_isometric(k, 64, 5);
  EXPECT_EQ(big.dim(), 64u);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(distance(big[i], big[j]), distance(k[i], k[j]), 1e-9);
  EXPECT_THROW(embed_isometric(k, 1, 5), invalid_input);
}

TEST(Embedding, JonesSumInvariant) {
  auto ds = generate(spec(DatasetKind::spiral, 100));
  auto f = build_family(build_nested_nets(ds.points, 4.0), 4.0);
  double base = jones_sum(f, ds.points).total_sum;
  for (std::size_t D : {8u, 64u}) {
    auto moved = embed_isometric(ds.points, D, 11);
    auto g = build_family(build_nested_nets(moved, f.nets.n0, f.nets.n_max), 4.0);
    EXPECT_NEAR(jones_sum(g, moved).total_sum, base, 1e-6 * base) << D;
  }
}

TEST(PointCsv, HeaderAndErrors) {
  std::istringstream ok("x,y\n0,0\n1.5, 2\n\n-1e-3,4\n");
  auto s = read_points_csv(ok);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[1][0], 1.5);
  EXPECT_EQ(s[2][0], -1e-3);
  std::istringstream ragged("0,0\n1,2,3\n");
  EXPECT_THROW(read_points_csv(ragged), invalid_input);
  std::istringstream junk("0,0\nfoo,1\n");
  EXPECT_THROW(read_points_csv(junk), invalid_input);
  std::istringstream empty("x,y\n");
  EXPECT_THROW(read_points_csv(empty), invalid_input);
  std::istringstream nan("0,nan\n");
  EXPECT_THROW(read_points_csv(nan), invalid_input);
}

TEST(PointCsv, RoundTrip) {
  auto ds = generate(spec(DatasetKind::spiral, 40));
  std::stringstream buf;
  write_points_csv(buf, ds.points);
  EXPECT_EQ(read_points_csv(buf).flat(), ds.points.flat());
}

TEST(Compare, CollinearHasZeroJonesSum) {
  auto rep = compare(spec(DatasetKind::collinear, 100));
  EXPECT_EQ(rep.jones_sum_K, 0.0);
  EXPECT_NEAR(rep.r1, 1.0, 1e-12);
  EXPECT_NEAR(*rep.construction_G, 1.0, 1e-12);
}

TEST(Compare, Koch5Anchor) {
  CompareOptions o;
  o.run_construction = false;
  auto rep = compare(spec(DatasetKind::koch, 5), o);
  EXPECT_GE(rep.r1, 4.0);
  EXPECT_LE(rep.r1, 4.1);
  EXPECT_TRUE(rep.r3.has_value());
}

TEST(Compare, UniformSquareR1IndependentOfAmbientDimension) {
  CompareOptions o;
  o.run_construction = false;
  double base = compare(spec(DatasetKind::uniform_square, 200), o).r1;
  for (std::size_t D : {8u, 64u, 256u}) {
    o.embed_dim = D;
    EXPECT_NEAR(compare(spec(DatasetKind::uniform_square, 200), o).r1, base, 1e-6) << D;
  }
}

TEST(Compare, RejectsTinyInputs) {
  Dataset ds{"one", PointSet(2), std::nullopt};
  ds.points.push_back(Point{0, 0});
  EXPECT_THROW(compare(ds, 1), invalid_input);
}
