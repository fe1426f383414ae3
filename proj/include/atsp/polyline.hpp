#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "atsp/geometry.hpp"

namespace atsp {

/// Polyline with a cumulative arclength table; arclength is the curve
/// parameter throughout.
class PolylineCurve {
 public:
  PolylineCurve() = default;
  explicit PolylineCurve(PointSet vertices) : vertices_(std::move(vertices)) { rebuild(); }

  const PointSet& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }
  std::size_t dim() const noexcept { return vertices_.dim(); }
  std::size_t segment_count() const noexcept { return size() < 2 ? 0 : size() - 1; }

  /// cumulative()[i] is the arclength from the first vertex to vertex i.
  const std::vector<double>& cumulative() const noexcept { return cum_; }
  double length() const noexcept { return cum_.empty() ? 0.0 : cum_.back(); }

  /// Point at arclength `s`, clamped to [0, length()].
  Point at(double s) const {
    if (empty()) throw invalid_input("evaluating an empty curve");
    if (size() == 1 || s <= 0.0) return vertices_.point(0);
    if (s >= length()) return vertices_.point(size() - 1);
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    std::size_t seg = static_cast<std::size_t>(it - cum_.begin()) - 1;
    seg = std::min(seg, segment_count() - 1);
    double seg_len = cum_[seg + 1] - cum_[seg];
    double t = seg_len > 0 ? (s - cum_[seg]) / seg_len : 0.0;
    auto a = vertices_[seg];
    auto b = vertices_[seg + 1];
    std::vector<double> out(dim());
    for (std::size_t i = 0; i < dim(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return Point(std::move(out));
  }

  /// Calls fn(i) for every segment i (ascending) whose bounding box meets
  /// the slack-inflated ball. A superset of the segments that meet the ball.
  template <class Fn>
  void for_segments_near(const Ball& q, Fn&& fn) const {
    if (nodes_.empty()) return;
    const double r = q.radius * (1.0 + kBoundarySlack);
    visit(0, q.center, r * r, fn);
  }

  /// Sub-polyline for the parameter interval [a, b]: the two end points plus
  /// every vertex strictly inside.
  PointSet sub_arc_vertices(double a, double b) const {
    PointSet out(dim());
    out.push_back(at(a));
    auto first = std::upper_bound(cum_.begin(), cum_.end(), a);
    for (auto it = first; it != cum_.end() && *it < b; ++it)
      out.push_back(vertices_[static_cast<std::size_t>(it - cum_.begin())]);
    out.push_back(at(b));
    return out;
  }

 private:
  // Bounding-box tree over contiguous segment ranges; children of node k
  // are stored right after it (left) and at `right`.
  struct Node {
    std::size_t lo = 0, hi = 0, right = 0;
  };
  static constexpr std::size_t kLeafSize = 8;

  void rebuild() {
    cum_.assign(vertices_.size(), 0.0);
    for (std::size_t i = 1; i < vertices_.size(); ++i)
      cum_[i] = cum_[i - 1] + distance(vertices_[i - 1], vertices_[i]);
    nodes_.clear();
    box_.clear();
    if (segment_count() > 0) build(0, segment_count());
  }

  std::size_t build(std::size_t lo, std::size_t hi) {
    const std::size_t d = dim();
    std::size_t k = nodes_.size();
    nodes_.push_back(Node{lo, hi, 0});
    box_.resize(box_.size() + 2 * d);
    double* mn = box_.data() + 2 * d * k;
    double* mx = mn + d;
    for (std::size_t c = 0; c < d; ++c) {
      mn[c] = std::numeric_limits<double>::infinity();
      mx[c] = -std::numeric_limits<double>::infinity();
    }
    for (std::size_t v = lo; v <= hi; ++v)
      for (std::size_t c = 0; c < d; ++c) {
        mn[c] = std::min(mn[c], vertices_[v][c]);
        mx[c] = std::max(mx[c], vertices_[v][c]);
      }
    if (hi - lo > kLeafSize) {
      std::size_t mid = lo + (hi - lo) / 2;
      build(lo, mid);
      std::size_t r = build(mid, hi);
      nodes_[k].right = r;
    }
    return k;
  }

  template <class Fn>
  void visit(std::size_t k, Coords x, double r2, Fn& fn) const {
    const std::size_t d = dim();
    const double* mn = box_.data() + 2 * d * k;
    const double* mx = mn + d;
    double g = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      double e = x[c] < mn[c] ? mn[c] - x[c] : (x[c] > mx[c] ? x[c] - mx[c] : 0.0);
      g += e * e;
    }
    if (g > r2) return;
    const Node& n = nodes_[k];
    if (n.right == 0) {
      for (std::size_t i = n.lo; i < n.hi; ++i) fn(i);
      return;
    }
    visit(k + 1, x, r2, fn);
    visit(n.right, x, r2, fn);
  }

  PointSet vertices_;
  std::vector<double> cum_;
  std::vector<Node> nodes_;
  std::vector<double> box_;  // per node: min corner then max corner
};

inline double curve_length(const PolylineCurve& c) { return c.length(); }

/// Parameter interval [t0, t1] ⊆ [0, 1] of the part of segment a + t(b - a)
/// inside the ball, or nullopt when the segment misses it.
inline std::optional<std::pair<double, double>> clip_segment(Coords a, Coords b, const Ball& q) {
  const double r = q.radius * (1.0 + kBoundarySlack);
  Coords c = q.center;
  double aa = 0.0, fd = 0.0, ff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = b[i] - a[i];
    double f = a[i] - c[i];
    aa += d * d;
    fd += f * d;
    ff += f * f;
  }
  double bb = 2.0 * fd;
  double cc = ff - r * r;
  if (aa == 0.0) {
    if (cc <= 0.0) return std::pair{0.0, 1.0};
    return std::nullopt;
  }
  double disc = bb * bb - 4.0 * aa * cc;
  if (disc < 0.0) return std::nullopt;
  double sq = std::sqrt(disc);
  // Numerically stable root pair.
  double qv = -0.5 * (bb + (bb >= 0 ? sq : -sq));
  double r1 = qv / aa;
  double r2 = qv != 0.0 ? cc / qv : r1;
  double lo = std::min(r1, r2), hi = std::max(r1, r2);
  double t0 = std::max(lo, 0.0), t1 = std::min(hi, 1.0);
  if (t0 > t1) return std::nullopt;
  return std::pair{t0, t1};
}

/// Exact length of C ∩ Q.
inline double clip_length(const PolylineCurve& c, const Ball& q) {
  double total = 0.0;
  const auto& v = c.vertices();
  if (c.size() == 1) return 0.0;
  c.for_segments_near(q, [&](std::size_t i) {
    if (auto iv = clip_segment(v[i], v[i + 1], q)) {
      double seg = c.cumulative()[i + 1] - c.cumulative()[i];
      total += (iv->second - iv->first) * seg;
    }
  });
  return std::min(total, c.length());
}

/// End points of every clipped piece of C ∩ Q. For a fixed line the distance
/// is convex along a segment, so these points carry the sup over C ∩ Q.
inline PointSet clipped_endpoints(const PolylineCurve& c, const Ball& q) {
  PointSet out(c.dim() == 0 ? q.center.dim() : c.dim());
  const auto& v = c.vertices();
  if (c.size() == 1) {
    if (in_ball(v[0], q)) out.push_back(v[0]);
    return out;
  }
  std::vector<double> p(out.dim());
  auto emit = [&](std::size_t i, double t) {
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = v[i][k] + t * (v[i + 1][k] - v[i][k]);
    out.push_back(p);
  };
  c.for_segments_near(q, [&](std::size_t i) {
    auto iv = clip_segment(v[i], v[i + 1], q);
    if (!iv) return;
    emit(i, iv->first);
    if (iv->second > iv->first) emit(i, iv->second);
  });
  return out;
}

}  // namespace atsp
