#pragma once

// Jones beta numbers: the width of the thinnest cylinder around a line that
// contains the data inside a ball, normalised by the ball's diameter.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "atsp/geometry.hpp"
#include "atsp/polyline.hpp"

namespace atsp {

enum class BetaMethod { exact2d, candidate_axes, grid_oracle };

inline const char* to_string(BetaMethod m) {
  switch (m) {
    case BetaMethod::exact2d: return "exact2d";
    case BetaMethod::candidate_axes: return "candidate_axes";
    case BetaMethod::grid_oracle: return "grid_oracle";
  }
  return "?";
}

struct BetaValue {
  double value = 0.0;
  Line witness_line;
  BetaMethod method = BetaMethod::exact2d;
};

namespace detail {

using Vec2 = std::array<double, 2>;

inline double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Andrew's monotone chain; collinear boundary points are dropped.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

struct Strip2 {
  Vec2 dir{1.0, 0.0};
  double offset = 0.0;  // signed position of the strip's mid-line along the normal
  double width = 0.0;
};

/// Minimum-width strip of a planar point set: optimal strips have a side
/// flush with a hull edge.
inline Strip2 min_width_strip(const std::vector<Vec2>& pts) {
  auto hull = convex_hull(pts);
  Strip2 best;
  if (hull.size() < 3) {
    if (hull.size() == 2) {
      Vec2 d{hull[1][0] - hull[0][0], hull[1][1] - hull[0][1]};
      double n = std::hypot(d[0], d[1]);
      best.dir = {d[0] / n, d[1] / n};
      best.offset = -best.dir[1] * hull[0][0] + best.dir[0] * hull[0][1];
    }
    return best;
  }
  best.width = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    double dx = b[0] - a[0], dy = b[1] - a[1];
    double len = std::hypot(dx, dy);
    if (len == 0) continue;
    Vec2 u{dx / len, dy / len};
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& p : hull) {
      double s = -u[1] * p[0] + u[0] * p[1];
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    if (hi - lo < best.width) best = Strip2{u, 0.5 * (lo + hi), hi - lo};
  }
  return best;
}

/// sup over the points of the distance to `line`.
inline double sup_distance(const PointSet& pts, const Line& line) {
  double m = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) m = std::max(m, point_line_distance(pts[i], line));
  return m;
}

inline std::vector<double> centroid(const PointSet& pts) {
  std::vector<double> c(pts.dim(), 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t k = 0; k < pts.dim(); ++k) c[k] += pts[i][k];
  for (double& x : c) x /= static_cast<double>(pts.size());
  return c;
}

/// Top principal direction by power iteration started at `start`; the
/// iteration is equivariant, so the result moves with the data.
inline std::vector<double> principal_direction(const PointSet& pts, std::vector<double> start) {
  auto c = centroid(pts);
  std::vector<double> v = normalized(std::move(start));
  std::vector<double> centred(pts.size() * pts.dim());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t k = 0; k < pts.dim(); ++k) centred[i * pts.dim() + k] = pts[i][k] - c[k];
  for (int it = 0; it < 200; ++it) {
    std::vector<double> w(pts.dim(), 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Coords row(centred.data() + i * pts.dim(), pts.dim());
      double t = dot(row, v);
      for (std::size_t k = 0; k < pts.dim(); ++k) w[k] += t * row[k];
    }
    if (norm(w) == 0.0) return v;
    w = normalized(std::move(w));
    if (dot(w, v) < 0)
      for (double& x : w) x = -x;
    double change = std::sqrt(dist2(w, v));
    v = std::move(w);
    if (change < 1e-14) break;
  }
  return v;
}

/// Best anchor for a fixed direction: the components orthogonal to `u` are
/// covered by a small ball (approximate minimum enclosing ball by
/// Badoiu-Clarkson steps, plus centroid and the ball-centre fallback).
inline Line best_line_for_direction(const PointSet& pts, const std::vector<double>& u,
                                    const Ball& q, std::vector<Point> extra_anchors) {
  const std::size_t dim = pts.dim();
  auto residual = [&](Coords p) {
    std::vector<double> r(p.begin(), p.end());
    double t = dot(r, u);
    for (std::size_t k = 0; k < dim; ++k) r[k] -= t * u[k];
    return r;
  };
  std::vector<std::vector<double>> res(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) res[i] = residual(pts[i]);

  auto radius_for = [&](const std::vector<double>& a) {
    double m = 0.0;
    for (const auto& r : res) m = std::max(m, dist2(r, a));
    return std::sqrt(m);
  };

  std::vector<std::vector<double>> anchors;
  anchors.push_back(residual(q.center));
  for (const auto& a : extra_anchors) anchors.push_back(residual(a));
  std::vector<double> c(dim, 0.0);
  for (const auto& r : res)
    for (std::size_t k = 0; k < dim; ++k) c[k] += r[k];
  for (double& x : c) x /= static_cast<double>(res.size());
  anchors.push_back(c);
  for (int it = 1; it <= 64; ++it) {
    std::size_t far = 0;
    double fd = -1.0;
    for (std::size_t i = 0; i < res.size(); ++i) {
      double d = dist2(res[i], c);
      if (d > fd) {
        fd = d;
        far = i;
      }
    }
    for (std::size_t k = 0; k < dim; ++k) c[k] += (res[far][k] - c[k]) / (it + 1.0);
  }
  anchors.push_back(c);

  std::size_t best = 0;
  double best_r = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    double r = radius_for(anchors[i]);
    if (r < best_r) {
      best_r = r;
      best = i;
    }
  }
  return Line{Point(anchors[best]), Point(u)};
}

}  // namespace detail

/// Beta of a finite point set that is already restricted to `q`.
///
/// Affinely planar data (in any ambient dimension) gets the exact value from
/// the minimum-width strip in its own plane; the optimal line for planar data
/// lies in that plane. Otherwise the best of several equivariant candidate
/// lines is used, which is an upper bound on the true value.
inline BetaValue beta_of_points(const PointSet& pts, const Ball& q) {
  if (!(q.radius > 0)) throw invalid_input("ball radius must be positive");
  const std::size_t dim = q.center.dim();
  auto degenerate = [&](Coords anchor, std::vector<double> dir) {
    if (detail::norm(dir) == 0.0) {
      dir.assign(dim, 0.0);
      dir[0] = 1.0;
    }
    return BetaValue{0.0, Line{Point(anchor), Point(detail::normalized(std::move(dir)))},
                     BetaMethod::exact2d};
  };
  if (pts.size() <= 1) return degenerate(pts.empty() ? q.center.coords() : pts[0], {});
  if (pts.dim() != dim) throw invalid_input("dimension mismatch between points and ball");

  auto [i0, j0] = diameter_pair(pts);
  auto e1 = detail::normalized(detail::sub(pts[j0], pts[i0]));
  if (detail::norm(e1) == 0.0) return degenerate(pts[i0], {});
  const Line chord{pts.point(i0), Point(e1)};

  std::size_t far = npos;
  double far_d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double d = point_line_distance(pts[i], chord);
    if (d > far_d * (1.0 + 1e-12)) {
      far_d = d;
      far = i;
    }
  }
  if (far == npos || far_d <= 1e-12 * q.diam()) return degenerate(pts[i0], e1);

  auto v = detail::sub(pts[far], pts[i0]);
  double t = detail::dot(v, e1);
  for (std::size_t k = 0; k < dim; ++k) v[k] -= t * e1[k];
  auto e2 = detail::normalized(std::move(v));

  // Planar coordinates and the out-of-plane residual.
  std::vector<detail::Vec2> flat(pts.size());
  double out_of_plane = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto w = detail::sub(pts[i], pts[i0]);
    double a = detail::dot(w, e1), b = detail::dot(w, e2);
    flat[i] = {a, b};
    if (dim > 2) {
      double r2 = detail::dot(w, w) - a * a - b * b;
      out_of_plane = std::max(out_of_plane, std::sqrt(std::max(r2, 0.0)));
    }
  }
  auto strip = detail::min_width_strip(flat);
  std::vector<double> plane_dir(dim), plane_anchor(pts[i0].begin(), pts[i0].end());
  const double nx = -strip.dir[1], ny = strip.dir[0];
  for (std::size_t k = 0; k < dim; ++k) {
    plane_dir[k] = strip.dir[0] * e1[k] + strip.dir[1] * e2[k];
    plane_anchor[k] += strip.offset * (nx * e1[k] + ny * e2[k]);
  }
  Line plane_line{Point(std::move(plane_anchor)), Point(detail::normalized(std::move(plane_dir)))};

  if (out_of_plane <= 1e-9 * q.radius) {
    double sup = detail::sup_distance(pts, plane_line);
    return BetaValue{std::min(1.0, 2.0 * sup / q.diam()), std::move(plane_line), BetaMethod::exact2d};
  }

  std::vector<std::vector<double>> dirs{e1, detail::principal_direction(pts, e1),
                                        plane_line.direction.vec()};
  BetaValue best{std::numeric_limits<double>::infinity(), {}, BetaMethod::candidate_axes};
  for (const auto& u : dirs) {
    auto line = detail::best_line_for_direction(pts, u, q, {plane_line.anchor, pts.point(i0)});
    double val = 2.0 * detail::sup_distance(pts, line) / q.diam();
    if (val < best.value) best = BetaValue{val, std::move(line), BetaMethod::candidate_axes};
  }
  best.value = std::min(best.value, 1.0);
  return best;
}

/// beta_S(Q) for the points of `s` inside `q`.
inline BetaValue beta_points(const PointSet& s, const Ball& q) {
  return beta_of_points(s.subset(points_in_ball(s, q)), q);
}

/// beta of the continuum C ∩ Q, evaluated on the exactly clipped pieces.
inline BetaValue beta_polyline(const PolylineCurve& c, const Ball& q) {
  if (c.empty()) throw invalid_input("beta of an empty curve");
  return beta_of_points(clipped_endpoints(c, q), q);
}

/// Brute-force planar reference: minimum strip width over `grid` directions
/// uniformly spaced in [0, pi). Never below the true value; the gap is at most
/// pi/(2·grid).
inline BetaValue beta_oracle_2d_points(const PointSet& pts, const Ball& q, int grid) {
  if (q.center.dim() != 2) throw invalid_input("beta_oracle_2d requires dimension 2");
  if (grid < 1) throw invalid_input("grid must be positive");
  if (!(q.radius > 0)) throw invalid_input("ball radius must be positive");
  BetaValue best{0.0, Line{q.center, Point{1.0, 0.0}}, BetaMethod::grid_oracle};
  if (pts.size() <= 1) return best;
  double best_w = std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid; ++j) {
    double th = std::numbers::pi * j / grid;
    double ux = std::cos(th), uy = std::sin(th);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      double s = -uy * pts[i][0] + ux * pts[i][1];
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    if (hi - lo < best_w) {
      best_w = hi - lo;
      double mid = 0.5 * (lo + hi);
      best.witness_line = Line{Point{-uy * mid, ux * mid}, Point{ux, uy}};
    }
  }
  best.value = best_w / q.diam();
  return best;
}

inline BetaValue beta_oracle_2d(const PointSet& s, const Ball& q, int grid) {
  if (s.dim() != 2 || q.center.dim() != 2) throw invalid_input("beta_oracle_2d requires dimension 2");
  return beta_oracle_2d_points(s.subset(points_in_ball(s, q)), q, grid);
}

}  // namespace atsp
