#pragma once

// Arc-level beta numbers and their square sum over nested dyadic splittings
// of a curve's arclength parameter.

#include <algorithm>
#include <cmath>
#include <vector>

#include "atsp/geometry.hpp"
#include "atsp/polyline.hpp"

namespace atsp {

/// Sub-arc of a curve for the arclength interval [a, b].
struct Arc {
  double a = 0.0;
  double b = 0.0;
};

/// diam of the arc's image; the image's extreme points are vertices of the
/// sub-polyline.
inline double arc_diameter(const PolylineCurve& c, const Arc& arc) {
  return diameter(c.sub_arc_vertices(arc.a, arc.b));
}

/// sup of the distance from the arc to its chord segment, over the arc's
/// diameter. The distance to a segment is convex along each straight piece,
/// so the vertices of the sub-polyline carry the sup.
inline double beta_tilde(const PolylineCurve& c, const Arc& arc) {
  auto pts = c.sub_arc_vertices(arc.a, arc.b);
  double diam = diameter(pts);
  if (!(diam > 0.0)) return 0.0;
  Coords s = pts[0], e = pts[pts.size() - 1];
  double sup = 0.0;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) sup = std::max(sup, point_segment_distance(pts[i], s, e));
  return std::min(sup / diam, 1.0);
}

struct ArcRow {
  int level = 0;
  std::size_t index = 0;
  Arc arc;
  double diam = 0.0;
  double beta_tilde = 0.0;
  double contribution = 0.0;
};

/// Level n splits [0, L] into 2^(n·J) equal parameter intervals; each arc at
/// level n+1 sits inside exactly one arc at level n (index >> J).
struct DyadicFiltration {
  PolylineCurve curve;
  int depth = 0;
  int J = 1;
  std::vector<std::vector<Arc>> levels;

  std::size_t parent(int level, std::size_t index) const {
    (void)level;
    return index >> J;
  }
};

inline DyadicFiltration dyadic_filtration(const PolylineCurve& c, int depth, int J = 1) {
  if (c.length() <= 0.0) throw invalid_input("filtration of a zero-length curve");
  if (depth < 0 || J < 1) throw invalid_input("depth must be >= 0 and J >= 1");
  if (depth * J > 20) throw invalid_input("depth·J must not exceed 20 halvings");
  DyadicFiltration f{c, depth, J, {}};
  const double L = c.length();
  for (int n = 0; n <= depth; ++n) {
    const std::size_t count = std::size_t{1} << (n * J);
    std::vector<Arc> lvl(count);
    for (std::size_t i = 0; i < count; ++i)
      lvl[i] = Arc{L * static_cast<double>(i) / static_cast<double>(count),
                   L * static_cast<double>(i + 1) / static_cast<double>(count)};
    lvl.back().b = L;
    f.levels.push_back(std::move(lvl));
  }
  return f;
}

/// Every arc with its diameter, beta_tilde and beta_tilde^2·diam, level-major.
inline std::vector<ArcRow> filtration_rows(const DyadicFiltration& f) {
  std::vector<ArcRow> rows;
  for (std::size_t n = 0; n < f.levels.size(); ++n)
    for (std::size_t i = 0; i < f.levels[n].size(); ++i) {
      const Arc& arc = f.levels[n][i];
      auto pts = f.curve.sub_arc_vertices(arc.a, arc.b);
      double diam = diameter(pts);
      double bt = beta_tilde(f.curve, arc);
      rows.push_back(ArcRow{static_cast<int>(n), i, arc, diam, bt, bt * bt * diam});
    }
  return rows;
}

inline double square_sum(const DyadicFiltration& f) {
  double s = 0.0;
  for (const auto& r : filtration_rows(f)) s += r.contribution;
  return s;
}

/// Sum restricted to the arcs contained in arc `index` of `level` (itself
/// included).
inline double restricted_square_sum(const std::vector<ArcRow>& rows, const DyadicFiltration& f,
                                    int level, std::size_t index) {
  double s = 0.0;
  for (const auto& r : rows) {
    if (r.level < level) continue;
    std::size_t anc = r.index >> ((r.level - level) * f.J);
    if (anc == index) s += r.contribution;
  }
  return s;
}

}  // namespace atsp
