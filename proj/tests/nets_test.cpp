#include <gtest/gtest.h>

#include <random>

#include "atsp/datasets.hpp"
#include "atsp/nets.hpp"

using namespace atsp;

namespace {

PointSet line_points(std::initializer_list<double> xs) {
  PointSet s(1);
  for (double x : xs) s.push_back(Point{x});
  return s;
}

PointSet random_points(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  PointSet s(dim);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> p(dim);
    for (double& x : p) x = g(rng);
    s.push_back(Point(std::move(p)));
  }
  return s;
}

}  // namespace

TEST(Nets, HalfScaleExample) {
  auto k = line_points({0.0, 0.3, 0.6, 1.0});
  auto nets = build_nested_nets(k, 1, 1);
  EXPECT_EQ(nets.members(1), (std::vector<std::size_t>{0, 2}));
  // Directly from the definitions.
  EXPECT_GT(distance(k[0], k[2]), 0.5);
  EXPECT_LE(distance(k[1], k[0]), 0.5);
  EXPECT_LE(distance(k[3], k[2]), 0.5);
  auto deeper = build_nested_nets(k, 0, 1);
  EXPECT_EQ(deeper.members(0), (std::vector<std::size_t>{0}));
  EXPECT_EQ(deeper.members(1), (std::vector<std::size_t>{0, 2}));
}

TEST(Nets, SingletonAtEveryLevel) {
  auto k = line_points({0.7});
  auto nets = build_nested_nets(k, -3, 6);
  for (int n = -3; n <= 6; ++n) EXPECT_EQ(nets.members(n), (std::vector<std::size_t>{0}));
}

TEST(Nets, FineLevelHoldsEverything) {
  std::mt19937_64 rng(2);
  auto k = random_points(rng, 60, 3);
  double gap = min_pairwise_gap(k);
  int n = static_cast<int>(std::ceil(-std::log2(gap))) + 1;
  auto nets = build_nested_nets(k, 0, n);
  EXPECT_EQ(nets.members(n).size(), k.size());
}

TEST(Nets, InvariantsOnRandomData) {
  std::mt19937_64 rng(3);
  for (std::size_t dim : {1u, 2u, 8u, 64u}) {
    for (int trial = 0; trial < 5; ++trial) {
      auto k = random_points(rng, 80, dim);
      auto nets = build_nested_nets(k, 4.0);
      EXPECT_FALSE(check_net_invariants(nets).has_value()) << dim;
    }
  }
}

TEST(Nets, CheckerCatchesBrokenNets) {
  auto k = line_points({0.0, 0.3, 0.6, 1.0});
  auto nets = build_nested_nets(k, 0, 2);
  auto bad = nets;
  bad.levels[1] = {0};  // 0.6 and 1.0 uncovered at scale 0.5
  EXPECT_TRUE(check_net_invariants(bad).has_value());
  bad = nets;
  bad.levels[1] = {0, 2};
  bad.levels[2] = {1, 2, 3};  // drops 0, which level 1 holds
  EXPECT_TRUE(check_net_invariants(bad).has_value());
  bad = nets;
  bad.levels[1] = {0, 1, 2};  // 0 and 0.3 closer than 0.5
  EXPECT_TRUE(check_net_invariants(bad).has_value());
}

TEST(Nets, Deterministic) {
  std::mt19937_64 rng(4);
  auto k = random_points(rng, 100, 2);
  auto a = build_nested_nets(k, 4.0);
  auto b = build_nested_nets(k, 4.0);
  EXPECT_EQ(a.levels, b.levels);
}

TEST(Nets, ExtendingLevelsKeepsCoarseLevels) {
  std::mt19937_64 rng(5);
  auto k = random_points(rng, 100, 2);
  auto a = build_nested_nets(k, -2, 4);
  auto b = build_nested_nets(k, -2, 9);
  for (int n = -2; n <= 4; ++n) EXPECT_EQ(a.members(n), b.members(n));
}

TEST(Nets, BadArguments) {
  EXPECT_THROW(build_nested_nets(PointSet(2), 0, 1), invalid_input);
  EXPECT_THROW(build_nested_nets(line_points({0.0}), 2, 1), invalid_input);
}

TEST(Family, CountsAndRadii) {
  NestedNets nets{line_points({0.0, 1.0}), {{0, {0}}, {1, {0, 1}}}, 0, 1, 1.0};
  auto f = build_family(nets, 4.0);
  EXPECT_EQ(f.size(), 3u);
  auto g = build_family(build_nested_nets(line_points({0.0, 1.0}), 2, 2), 4.0);
  EXPECT_DOUBLE_EQ(g.balls.front().radius, 1.0);
  EXPECT_THROW(build_family(nets, 1.0), invalid_input);
}

TEST(Family, IsometryKeepsCentersAndRadii) {
  std::mt19937_64 rng(6);
  auto k = random_points(rng, 50, 2);
  auto f = build_family(build_nested_nets(k, -1, 6), 4.0);
  const double c = std::cos(0.7), s = std::sin(0.7);
  PointSet moved(2);
  for (std::size_t i = 0; i < k.size(); ++i)
    moved.push_back(Point{c * k[i][0] - s * k[i][1] + 3.0, s * k[i][0] + c * k[i][1] - 1.0});
  auto g = build_family(build_nested_nets(moved, -1, 6), 4.0);
  ASSERT_EQ(f.size(), g.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_EQ(f.balls[i].center_index, g.balls[i].center_index);
    EXPECT_EQ(f.balls[i].radius, g.balls[i].radius);
  }
}

TEST(GFilter, Examples) {
  PointSet seg(2);
  seg.push_back(Point{-50, 0});
  seg.push_back(Point{50, 0});
  PolylineCurve gamma(seg);
  MultiresolutionFamily f;
  f.balls = {Ball{Point{0, 0}, 1000.0}, Ball{Point{0, 0}, 1.0}};
  auto kept = g_filter(f, gamma);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].radius, 1.0);
}

TEST(GFilter, KochDifferenceIsTheContainingBalls) {
  DatasetSpec spec;
  spec.kind = DatasetKind::koch;
  spec.size = 4;
  auto ds = generate(spec);
  auto f = build_family(build_nested_nets(ds.points, 4.0), 4.0);
  auto kept = g_filter(f, *ds.curve);
  std::size_t containing = 0;
  for (const auto& q : f.balls) {
    double far = 0.0;
    for (std::size_t i = 0; i < ds.curve->size(); ++i) far = std::max(far, distance(ds.curve->vertices()[i], q.center));
    if (4.0 * q.radius >= far) ++containing;
  }
  EXPECT_LT(kept.size(), f.size());
  EXPECT_EQ(f.size() - kept.size(), containing);
}
