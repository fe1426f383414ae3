#pragma once

// Nested 2^-n nets and the multiresolution ball family built on them.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atsp/geometry.hpp"
#include "atsp/polyline.hpp"

namespace atsp {

/// Per-level index subsets of `base`. Level n has scale unit·2^-n; members
/// are more than one scale apart, every base point is within one scale of a
/// member, and each level contains the previous one.
struct NestedNets {
  PointSet base;
  std::map<int, std::vector<std::size_t>> levels;
  int n0 = 0;
  int n_max = 0;
  double unit = 1.0;

  double scale(int n) const { return unit * std::ldexp(1.0, -n); }
  const std::vector<std::size_t>& members(int n) const { return levels.at(n); }
};

/// Coarsest level whose scale is at least diam(K).
inline int auto_n0(const PointSet& k, double unit = 1.0) {
  double d = diameter(k);
  if (d <= 0.0) return 0;
  return static_cast<int>(std::floor(-std::log2(d / unit)));
}

/// First level past which every ball of radius A·scale holds a single point,
/// plus one.
inline int auto_n_max(const PointSet& k, double A, double unit = 1.0) {
  double gap = min_pairwise_gap(k);
  if (!std::isfinite(gap)) return auto_n0(k, unit) + 1;
  return static_cast<int>(std::ceil(std::log2(A * unit / gap))) + 1;
}

/// Greedy maximal packing per level, seeded with the previous level's
/// members, then scanning the remaining points in index order.
inline NestedNets build_nested_nets(const PointSet& k, int n0, int n_max, double unit = 1.0) {
  if (k.empty()) throw invalid_input("nets over an empty point set");
  if (n0 > n_max) throw invalid_input("n0 must not exceed n_max");
  if (!(unit > 0)) throw invalid_input("net unit must be positive");
  NestedNets nets{k, {}, n0, n_max, unit};
  std::vector<std::size_t> prev;
  std::vector<char> member(k.size(), 0);
  for (int n = n0; n <= n_max; ++n) {
    const double sep = nets.scale(n) * (1.0 + kBoundarySlack);
    std::vector<std::size_t> cur = prev;
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (member[i]) continue;
      bool far = std::all_of(cur.begin(), cur.end(),
                             [&](std::size_t j) { return distance(k[i], k[j]) > sep; });
      if (far) {
        cur.push_back(i);
        member[i] = 1;
      }
    }
    std::vector<std::size_t> sorted = cur;
    std::sort(sorted.begin(), sorted.end());
    nets.levels[n] = sorted;
    prev = std::move(cur);
  }
  return nets;
}

inline NestedNets build_nested_nets(const PointSet& k, double A, double unit = 1.0) {
  return build_nested_nets(k, auto_n0(k, unit), auto_n_max(k, A, unit), unit);
}

/// Returns a description of the first violated net property, if any.
/// Separation is strict; covering allows the kBoundarySlack used during
/// construction.
inline std::optional<std::string> check_net_invariants(const NestedNets& nets) {
  const auto& k = nets.base;
  const std::vector<std::size_t>* prev = nullptr;
  for (const auto& [n, mem] : nets.levels) {
    const double s = nets.scale(n);
    for (std::size_t a = 0; a < mem.size(); ++a)
      for (std::size_t b = a + 1; b < mem.size(); ++b)
        if (!(distance(k[mem[a]], k[mem[b]]) > s))
          return "separation fails at level " + std::to_string(n);
    for (std::size_t i = 0; i < k.size(); ++i) {
      bool covered = std::any_of(mem.begin(), mem.end(), [&](std::size_t j) {
        return distance(k[i], k[j]) <= s * (1.0 + kBoundarySlack);
      });
      if (!covered) return "covering fails at level " + std::to_string(n);
    }
    if (prev && !std::includes(mem.begin(), mem.end(), prev->begin(), prev->end()))
      return "nesting fails at level " + std::to_string(n);
    prev = &mem;
  }
  return std::nullopt;
}

/// The ball family: one ball of radius A·scale(n) per (level, net member).
struct MultiresolutionFamily {
  NestedNets nets;
  double A = 4.0;
  std::vector<Ball> balls;

  std::size_t size() const noexcept { return balls.size(); }
};

inline MultiresolutionFamily build_family(NestedNets nets, double A) {
  if (!(A > 1.0)) throw invalid_input("family constant A must exceed 1");
  MultiresolutionFamily f{std::move(nets), A, {}};
  for (const auto& [n, mem] : f.nets.levels)
    for (auto i : mem) f.balls.push_back(Ball{f.nets.base.point(i), A * f.nets.scale(n), n, i});
  return f;
}

/// Balls that the curve leaves: some point of the curve lies outside 4Q.
/// Distance from the centre is convex along each segment, so vertices decide.
inline std::vector<Ball> g_filter(const MultiresolutionFamily& f, const PolylineCurve& gamma) {
  if (gamma.empty()) throw invalid_input("g_filter needs a nonempty curve");
  std::vector<Ball> out;
  for (const auto& q : f.balls) {
    double far = 0.0;
    for (std::size_t i = 0; i < gamma.size(); ++i)
      far = std::max(far, distance(gamma.vertices()[i], q.center));
    if (far > 4.0 * q.radius) out.push_back(q);
  }
  return out;
}

}  // namespace atsp
