#pragma once

// Intrinsic coordinates for point sets sitting in a low-dimensional affine
// subspace of a high-dimensional ambient space.

#include <vector>

#include "atsp/geometry.hpp"

namespace atsp {

/// Orthonormal frame of the affine span of a point set. `coords(p)` maps an
/// ambient point to its coordinates in the frame; distances between points of
/// the span are preserved.
struct AffineFrame {
  Point origin;
  std::vector<std::vector<double>> basis;

  std::size_t rank() const noexcept { return basis.size(); }

  Point coords(Coords p) const {
    auto v = detail::sub(p, origin);
    std::vector<double> out(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) out[k] = detail::dot(v, basis[k]);
    return Point(std::move(out));
  }

  /// Distance from `p` to the span.
  double residual(Coords p) const {
    auto v = detail::sub(p, origin);
    for (const auto& e : basis) {
      double t = detail::dot(v, e);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= t * e[i];
    }
    return detail::norm(v);
  }

  PointSet reduce(const PointSet& s) const {
    PointSet out(std::max<std::size_t>(rank(), 1));
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (rank() == 0) {
        out.push_back(Point{0.0});
      } else {
        out.push_back(coords(s[i]));
      }
    }
    return out;
  }
};

/// Pivoted Gram-Schmidt: starting at the first point, repeatedly adds the
/// direction of the point farthest from the current span (lowest index on
/// ties) until every residual is at most `rel_tol`·diameter. The pivot choice
/// depends only on distances, so the frame moves with the data under
/// isometries.
inline AffineFrame affine_frame(const PointSet& s, double rel_tol = 1e-12) {
  if (s.empty()) throw invalid_input("affine frame of an empty set");
  AffineFrame f{s.point(0), {}};
  double scale = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) scale = std::max(scale, distance(s[0], s[i]));
  if (scale == 0.0) return f;
  const double tol = rel_tol * scale;
  const std::size_t max_rank = std::min(s.dim(), s.size() - 1);
  while (f.rank() < max_rank) {
    std::size_t best = npos;
    double best_r = tol;
    std::vector<double> best_v;
    for (std::size_t i = 1; i < s.size(); ++i) {
      auto v = detail::sub(s[i], f.origin);
      for (const auto& e : f.basis) {
        double t = detail::dot(v, e);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= t * e[k];
      }
      double r = detail::norm(v);
      if (r > best_r * (1.0 + 1e-12)) {
        best_r = r;
        best = i;
        best_v = std::move(v);
      }
    }
    if (best == npos) break;
    // Second orthogonalisation pass keeps the basis orthonormal to rounding.
    for (const auto& e : f.basis) {
      double t = detail::dot(best_v, e);
      for (std::size_t k = 0; k < best_v.size(); ++k) best_v[k] -= t * e[k];
    }
    f.basis.push_back(detail::normalized(std::move(best_v)));
  }
  return f;
}

}  // namespace atsp
