#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "atsp/mst.hpp"

using namespace atsp;

namespace {

using EdgeSet = std::vector<std::pair<std::size_t, std::size_t>>;

EdgeSet normalized_edges(const GeometricGraph& g) {
  EdgeSet out;
  for (const auto& e : g.edges()) out.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  std::sort(out.begin(), out.end());
  return out;
}

// Every labelled tree on n vertices via its Prüfer sequence; returns the
// lightest one.
std::pair<double, EdgeSet> brute_force_mst(const PointSet& k) {
  const std::size_t n = k.size();
  if (n == 2) return {distance(k[0], k[1]), {{0, 1}}};
  std::vector<std::size_t> seq(n - 2, 0);
  double best = 1e300;
  EdgeSet best_edges;
  while (true) {
    std::vector<std::size_t> degree(n, 1);
    for (auto s : seq) ++degree[s];
    EdgeSet edges;
    for (auto s : seq) {
      for (std::size_t leaf = 0; leaf < n; ++leaf)
        if (degree[leaf] == 1) {
          edges.push_back({std::min(leaf, s), std::max(leaf, s)});
          --degree[leaf];
          --degree[s];
          break;
        }
    }
    std::vector<std::size_t> rest;
    for (std::size_t v = 0; v < n; ++v)
      if (degree[v] == 1) rest.push_back(v);
    edges.push_back({rest[0], rest[1]});
    double len = 0.0;
    for (auto [u, v] : edges) len += distance(k[u], k[v]);
    if (len < best) {
      best = len;
      std::sort(edges.begin(), edges.end());
      best_edges = edges;
    }
    std::size_t i = 0;
    while (i < seq.size() && ++seq[i] == n) seq[i++] = 0;
    if (i == seq.size()) break;
  }
  return {best, best_edges};
}

PointSet random_points(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PointSet s(dim);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> p(dim);
    for (double& x : p) x = u(rng);
    s.push_back(Point(std::move(p)));
  }
  return s;
}

GeometricGraph random_tree(std::mt19937_64& rng, std::size_t n) {
  GeometricGraph g(random_points(rng, n, 2));
  for (std::size_t v = 1; v < n; ++v) g.add_edge(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng), v);
  return g;
}

}  // namespace

TEST(Mst, BruteForceOracleSmallSets) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + trial % 6;
    auto k = random_points(rng, n, 1 + trial % 3);
    auto tree = mst(k);
    auto [len, edges] = brute_force_mst(k);
    EXPECT_EQ(normalized_edges(tree), edges) << trial;
    EXPECT_NEAR(total_length(tree), len, 1e-12) << trial;
  }
}

TEST(Mst, SquareCorners) {
  PointSet k(2);
  for (auto p : {Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}}) k.push_back(p);
  EXPECT_EQ(total_length(mst(k)), 3.0);
  EXPECT_EQ(brute_force_mst(k).first, 3.0);
}

TEST(Mst, CollinearIsAChain) {
  PointSet k(1);
  for (double x : {0.7, 0.0, 0.2, 1.0, 0.45}) k.push_back(Point{x});
  auto tree = mst(k);
  EXPECT_DOUBLE_EQ(total_length(tree), 1.0);
  std::map<std::size_t, int> deg;
  for (const auto& e : tree.edges()) {
    ++deg[e.u];
    ++deg[e.v];
  }
  for (auto [v, d] : deg) EXPECT_LE(d, 2);
}

TEST(Mst, Singleton) {
  PointSet k(2);
  k.push_back(Point{0.5, 0.5});
  auto tree = mst(k);
  EXPECT_TRUE(tree.edges().empty());
  EXPECT_EQ(total_length(tree), 0.0);
}

TEST(Mst, DiameterAtMostLengthAndInvariance) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    auto k = random_points(rng, 40, 3);
    double len = total_length(mst(k));
    EXPECT_LE(diameter(k), len);
    std::vector<std::size_t> perm(k.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_NEAR(total_length(mst(k.subset(perm))), len, 1e-12);
  }
}

TEST(GraphLength, Examples) {
  EXPECT_EQ(total_length(GeometricGraph()), 0.0);
  PointSet v(1);
  for (double x : {0.0, 1.0, 2.0}) v.push_back(Point{x});
  GeometricGraph g(v);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  EXPECT_EQ(total_length(g), 2.0);
}

TEST(EulerTour, Examples) {
  PointSet v(2);
  for (auto p : {Point{0, 0}, Point{1, 0}, Point{0, 1}, Point{-1, 0}}) v.push_back(p);
  GeometricGraph edge(v.subset(std::vector<std::size_t>{0, 1}));
  edge.add_edge(0, 1);
  EXPECT_EQ(euler_parametrization(edge).length(), 2.0);
  GeometricGraph star(v);
  for (std::size_t i = 1; i <= 3; ++i) star.add_edge(0, i);
  EXPECT_EQ(euler_parametrization(star).length(), 6.0);
}

TEST(EulerTour, RandomTrees) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = random_tree(rng, 2 + trial);
    auto walk = euler_tour(g);
    ASSERT_FALSE(walk.empty());
    EXPECT_EQ(walk.front(), walk.back());
    std::map<std::pair<std::size_t, std::size_t>, int> uses;
    for (std::size_t i = 0; i + 1 < walk.size(); ++i)
      ++uses[{std::min(walk[i], walk[i + 1]), std::max(walk[i], walk[i + 1])}];
    EXPECT_EQ(uses.size(), g.edges().size());
    for (auto [e, c] : uses) EXPECT_EQ(c, 2);
    std::set<std::size_t> seen(walk.begin(), walk.end());
    EXPECT_EQ(seen.size(), g.vertex_count());
    EXPECT_NEAR(euler_parametrization(g).length(), 2.0 * total_length(g), 1e-12 * total_length(g));
  }
}

TEST(EulerTour, DisconnectedThrows) {
  PointSet v(1);
  for (double x : {0.0, 1.0, 2.0}) v.push_back(Point{x});
  GeometricGraph g(v);
  g.add_edge(0, 1);
  EXPECT_THROW(euler_tour(g), invalid_input);
}
