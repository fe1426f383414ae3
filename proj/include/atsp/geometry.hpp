#pragma once

// Dimension-agnostic point storage and the Euclidean primitives used by every
// other module.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace atsp {

/// Thrown for malformed arguments (empty sets, dimension mismatches, bad
/// parameters). The CLI maps it to exit code 2.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a structural invariant of a construction is found broken.
/// The CLI maps it to exit code 1.
class invariant_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using Coords = std::span<const double>;

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// Relative slack applied to every "inside a ball" and "within 2^-n" test.
/// Exact boundary ties are common on dyadic inputs and must not flip under
/// rotations or rescaling.
inline constexpr double kBoundarySlack = 1e-9;

class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) { check(); }
  Point(std::initializer_list<double> coords) : coords_(coords) { check(); }
  explicit Point(Coords coords) : coords_(coords.begin(), coords.end()) { check(); }

  static Point zeros(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  Coords coords() const noexcept { return coords_; }
  operator Coords() const noexcept { return coords_; }
  const std::vector<double>& vec() const noexcept { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  void check() const {
    for (double c : coords_)
      if (!std::isfinite(c)) throw invalid_input("point coordinate is not finite");
  }

  std::vector<double> coords_;
};

/// An ordered list of points of a common ambient dimension, stored row-major.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw invalid_input("ambient dimension must be >= 1");
  }
  PointSet(std::size_t dim, std::vector<double> flat) : dim_(dim), data_(std::move(flat)) {
    if (dim == 0) throw invalid_input("ambient dimension must be >= 1");
    if (data_.size() % dim != 0) throw invalid_input("flat coordinate count is not a multiple of dim");
    for (double c : data_)
      if (!std::isfinite(c)) throw invalid_input("point coordinate is not finite");
  }
  PointSet(std::initializer_list<Point> pts) {
    for (const auto& p : pts) push_back(p);
  }

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : data_.size() / dim_; }
  bool empty() const noexcept { return size() == 0; }
  std::size_t dim() const noexcept { return dim_; }

  Coords operator[](std::size_t i) const { return Coords(data_.data() + i * dim_, dim_); }
  std::span<double> mutable_row(std::size_t i) { return std::span<double>(data_.data() + i * dim_, dim_); }
  Point point(std::size_t i) const { return Point((*this)[i]); }

  void push_back(Coords p) {
    if (dim_ == 0) {
      if (p.empty()) throw invalid_input("ambient dimension must be >= 1");
      dim_ = p.size();
    }
    if (p.size() != dim_) throw invalid_input("dimension mismatch in PointSet::push_back");
    for (double c : p)
      if (!std::isfinite(c)) throw invalid_input("point coordinate is not finite");
    data_.insert(data_.end(), p.begin(), p.end());
  }
  void push_back(const Point& p) { push_back(p.coords()); }

  const std::vector<double>& flat() const noexcept { return data_; }

  PointSet subset(std::span<const std::size_t> idx) const {
    PointSet out(dim_);
    out.data_.reserve(idx.size() * dim_);
    for (auto i : idx) out.push_back((*this)[i]);
    return out;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// Closed ball. `center_index` is the index of the center inside the point
/// set the ball was built from (npos for free-standing balls).
struct Ball {
  Point center;
  double radius = 0.0;
  int level = 0;
  std::size_t center_index = npos;

  double diam() const noexcept { return 2.0 * radius; }
};

/// Line through `anchor` with unit `direction`.
struct Line {
  Point anchor;
  Point direction;
};

namespace detail {

inline void require_same_dim(Coords a, Coords b) {
  if (a.size() != b.size()) throw invalid_input("dimension mismatch");
}

inline double dot(Coords a, Coords b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(Coords a) { return std::sqrt(dot(a, a)); }

inline double dist2(Coords a, Coords b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline std::vector<double> sub(Coords a, Coords b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline std::vector<double> axpy(Coords base, double t, Coords dir) {
  std::vector<double> out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) out[i] = base[i] + t * dir[i];
  return out;
}

inline std::vector<double> normalized(std::vector<double> v) {
  double n = norm(v);
  if (n > 0)
    for (double& c : v) c /= n;
  return v;
}

}  // namespace detail

inline double distance(Coords p, Coords q) {
  detail::require_same_dim(p, q);
  return std::sqrt(detail::dist2(p, q));
}

/// True when `p` lies in the closed ball, up to kBoundarySlack·radius.
inline bool in_ball(Coords p, const Ball& b) {
  return distance(p, b.center) <= b.radius * (1.0 + kBoundarySlack);
}

/// Indices of the points of `s` inside `b`, in index order.
inline std::vector<std::size_t> points_in_ball(const PointSet& s, const Ball& b) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (in_ball(s[i], b)) out.push_back(i);
  return out;
}

namespace detail {

/// Indices that can end a farthest pair: hull vertices in the plane (lowest
/// index among coincident points), everything otherwise. Sorted ascending.
inline std::vector<std::size_t> diameter_candidates(const PointSet& s) {
  std::vector<std::size_t> idx(s.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  if (s.dim() != 2 || s.size() <= 32) return idx;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (s[a][0] != s[b][0]) return s[a][0] < s[b][0];
    if (s[a][1] != s[b][1]) return s[a][1] < s[b][1];
    return a < b;
  });
  idx.erase(std::unique(idx.begin(), idx.end(),
                        [&](std::size_t a, std::size_t b) { return s[a][0] == s[b][0] && s[a][1] == s[b][1]; }),
            idx.end());
  if (idx.size() < 3) {
    std::sort(idx.begin(), idx.end());
    return idx;
  }
  auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
    return (s[a][0] - s[o][0]) * (s[b][1] - s[o][1]) - (s[a][1] - s[o][1]) * (s[b][0] - s[o][0]);
  };
  // Monotone chain keeping collinear boundary points; the extra candidates
  // cost little and make the filter safe against rounding in `cross`.
  std::vector<std::size_t> hull(2 * idx.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], idx[i]) < 0) --k;
    hull[k++] = idx[i];
  }
  for (std::size_t i = idx.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], idx[i]) < 0) --k;
    hull[k++] = idx[i];
  }
  hull.resize(k - 1);
  std::sort(hull.begin(), hull.end());
  hull.erase(std::unique(hull.begin(), hull.end()), hull.end());
  return hull;
}

}  // namespace detail

/// Farthest pair of points. Near-ties within a relative 1e-12 keep the
/// lexicographically smallest index pair so the result does not depend on
/// rounding.
inline std::pair<std::size_t, std::size_t> diameter_pair(const PointSet& s) {
  if (s.empty()) throw invalid_input("diameter of an empty set");
  auto cand = detail::diameter_candidates(s);
  std::pair<std::size_t, std::size_t> best{0, 0};
  double best_d2 = 0.0;
  for (std::size_t a = 0; a < cand.size(); ++a)
    for (std::size_t b = a + 1; b < cand.size(); ++b) {
      double d2 = detail::dist2(s[cand[a]], s[cand[b]]);
      if (d2 > best_d2 * (1.0 + 1e-12)) {
        best_d2 = d2;
        best = {cand[a], cand[b]};
      }
    }
  return best;
}

inline double diameter(const PointSet& s) {
  auto [i, j] = diameter_pair(s);
  return i == j ? 0.0 : distance(s[i], s[j]);
}

/// Smallest distance between two distinct-index points; +inf for |s| < 2.
inline double min_pairwise_gap(const PointSet& s) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      double d = std::sqrt(detail::dist2(s[i], s[j]));
      if (d > 0.0) best = std::min(best, d);
    }
  return best;
}

inline double point_line_distance(Coords p, const Line& line) {
  detail::require_same_dim(p, line.anchor);
  detail::require_same_dim(p, line.direction);
  auto v = detail::sub(p, line.anchor);
  double t = detail::dot(v, line.direction);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double r = v[i] - t * line.direction[i];
    s += r * r;
  }
  return std::sqrt(s);
}

/// Distance from `p` to the closed segment [a, b].
inline double point_segment_distance(Coords p, Coords a, Coords b) {
  auto ab = detail::sub(b, a);
  double len2 = detail::dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  auto ap = detail::sub(p, a);
  double t = std::clamp(detail::dot(ap, ab) / len2, 0.0, 1.0);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double r = ap[i] - t * ab[i];
    s += r * r;
  }
  return std::sqrt(s);
}

inline Line line_through(Coords a, Coords b) {
  auto dir = detail::normalized(detail::sub(b, a));
  if (detail::norm(dir) == 0.0) throw invalid_input("line through coincident points");
  return Line{Point(a), Point(std::move(dir))};
}

}  // namespace atsp
