#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "atsp/datasets.hpp"
#include "atsp/filtration.hpp"

using namespace atsp;

namespace {

PolylineCurve semicircle(int segments, double radius = 1.0) {
  PointSet v(2);
  for (int i = 0; i <= segments; ++i) {
    double th = std::numbers::pi * i / segments;
    v.push_back(Point{radius * std::cos(th), radius * std::sin(th)});
  }
  return PolylineCurve(std::move(v));
}

// Dense samples of the arc: sup distance to the chord over the sampled
// diameter.
double dense_beta_tilde(const PolylineCurve& c, const Arc& arc, int n) {
  std::vector<Point> pts;
  for (int i = 0; i <= n; ++i) pts.push_back(c.at(arc.a + (arc.b - arc.a) * i / n));
  double diam = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) diam = std::max(diam, distance(pts[i], pts[j]));
  double sup = 0.0;
  for (const auto& p : pts) sup = std::max(sup, point_segment_distance(p, pts.front(), pts.back()));
  return sup / diam;
}

Dataset make(DatasetKind kind, int size) {
  DatasetSpec s;
  s.kind = kind;
  s.size = size;
  return generate(s);
}

int depth_for(const PolylineCurve& c) {
  return static_cast<int>(std::ceil(std::log2(static_cast<double>(c.size() - 1)))) + 2;
}

}  // namespace

TEST(Filtration, DepthZeroIsTheWholeCurve) {
  auto c = semicircle(16);
  auto f = dyadic_filtration(c, 0);
  ASSERT_EQ(f.levels.size(), 1u);
  ASSERT_EQ(f.levels[0].size(), 1u);
  EXPECT_EQ(f.levels[0][0].a, 0.0);
  EXPECT_EQ(f.levels[0][0].b, c.length());
}

TEST(Filtration, CountsNestingAndDiameters) {
  auto ds = make(DatasetKind::koch, 3);
  for (int J : {1, 2}) {
    auto f = dyadic_filtration(*ds.curve, 4, J);
    for (std::size_t n = 0; n < f.levels.size(); ++n) {
      EXPECT_EQ(f.levels[n].size(), std::size_t{1} << (n * J));
      if (n == 0) continue;
      for (std::size_t i = 0; i < f.levels[n].size(); ++i) {
        const Arc& p = f.levels[n - 1][f.parent(static_cast<int>(n), i)];
        EXPECT_GE(f.levels[n][i].a, p.a);
        EXPECT_LE(f.levels[n][i].b, p.b);
      }
    }
    for (const auto& r : filtration_rows(f)) {
      EXPECT_LE(r.diam, (r.arc.b - r.arc.a) * (1 + 1e-12));
      EXPECT_GE(r.beta_tilde, 0.0);
      EXPECT_LE(r.beta_tilde, 1.0);
    }
  }
}

TEST(BetaTilde, SemicircleIsOneHalf) {
  auto c = semicircle(512);
  Arc whole{0.0, c.length()};
  EXPECT_NEAR(dense_beta_tilde(c, whole, 4000), 0.5, 1e-3);
  EXPECT_NEAR(beta_tilde(c, whole), 0.5, 1e-3);
}

TEST(BetaTilde, MatchesDenseOracleOnSubArcs) {
  auto ds = make(DatasetKind::spiral, 120);
  auto f = dyadic_filtration(*ds.curve, 3);
  for (const auto& lvl : f.levels)
    for (const auto& arc : lvl) EXPECT_NEAR(beta_tilde(*ds.curve, arc), dense_beta_tilde(*ds.curve, arc, 3000), 2e-3);
}

TEST(BetaTilde, StraightCurveIsZero) {
  auto ds = make(DatasetKind::collinear, 33);
  auto f = dyadic_filtration(*ds.curve, 6);
  EXPECT_EQ(square_sum(f), 0.0);
}

TEST(Filtration, ScaleCovariance) {
  auto a = semicircle(64, 1.0);
  auto b = semicircle(64, 4.0);
  double sa = square_sum(dyadic_filtration(a, 6));
  double sb = square_sum(dyadic_filtration(b, 6));
  EXPECT_NEAR(sb, 4.0 * sa, 1e-12 * sb);
}

TEST(Filtration, CircleRatioBounded) {
  auto ds = make(DatasetKind::circle, 256);
  auto f = dyadic_filtration(*ds.curve, 8);
  double ratio = square_sum(f) / ds.curve->length();
  RecordProperty("ratio", std::to_string(ratio));
  EXPECT_GT(ratio, 0.0);
  EXPECT_LE(ratio, 2.0);
}

TEST(Filtration, KochRatiosBoundedAcrossIterations) {
  for (int k = 1; k <= 6; ++k) {
    auto ds = make(DatasetKind::koch, k);
    auto f = dyadic_filtration(*ds.curve, depth_for(*ds.curve));
    double ratio = square_sum(f) / ds.curve->length();
    EXPECT_LE(ratio, 1.0) << k;
  }
}

TEST(Filtration, PerAncestorBound) {
  auto ds = make(DatasetKind::koch, 4);
  auto f = dyadic_filtration(*ds.curve, depth_for(*ds.curve));
  auto rows = filtration_rows(f);
  for (std::size_t i = 0; i < f.levels[1].size(); ++i) {
    const Arc& arc = f.levels[1][i];
    double diam = arc_diameter(*ds.curve, arc);
    EXPECT_LE(restricted_square_sum(rows, f, 1, i), 1.0 * (arc.b - arc.a) + diam);
  }
  // The restriction to the root is the full sum.
  EXPECT_NEAR(restricted_square_sum(rows, f, 0, 0), square_sum(f), 1e-12);
}

TEST(Filtration, BadArguments) {
  auto c = semicircle(8);
  EXPECT_THROW(dyadic_filtration(c, -1), invalid_input);
  EXPECT_THROW(dyadic_filtration(c, 2, 0), invalid_input);
  EXPECT_THROW(dyadic_filtration(c, 11, 2), invalid_input);
  PointSet p(2);
  p.push_back(Point{0, 0});
  p.push_back(Point{0, 0});
  EXPECT_THROW(dyadic_filtration(PolylineCurve(p), 2), invalid_input);
}
