#pragma once

// The Jones square sum over a multiresolution family, the pointwise Jones
// function, and the continuous (integral) form of the same quantity.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>
#include <variant>
#include <vector>

#include "atsp/beta.hpp"
#include "atsp/frame.hpp"
#include "atsp/nets.hpp"
#include "atsp/polyline.hpp"

namespace atsp {

struct JonesRow {
  std::size_t ball = 0;
  int level = 0;
  std::size_t center_index = npos;
  double beta = 0.0;
  double diam = 0.0;
  double contribution = 0.0;
  /// Row stands for every level from `level` down (closed-form tail).
  bool tail = false;
};

struct JonesReport {
  std::vector<JonesRow> per_ball;
  double total_sum = 0.0;
  double diam_K = 0.0;
  double rhs = 0.0;  // diam_K + total_sum
};

/// What the betas are measured on: the point set itself or a curve through it.
using JonesTarget = std::variant<PointSet, PolylineCurve>;

struct JonesOptions {
  unsigned threads = 1;
  /// When set, betas on point targets use the planar grid oracle instead of
  /// beta_points (2-D only).
  int oracle_grid = 0;
  /// Curve targets only: continue the sum past n_max to all scales. Below a
  /// per-centre radius the curve inside each ball is a union of rays from the
  /// centre, beta stops changing, and the remaining levels sum in closed form.
  bool scale_tail = false;
};

namespace detail {

/// Re-expresses the family's points and the target in intrinsic coordinates
/// of their joint affine span. Betas and distances are isometry invariant, so
/// this only changes cost.
struct ReducedProblem {
  PointSet centers;
  std::vector<double> radii;
  JonesTarget target;
};

inline ReducedProblem reduce_problem(const MultiresolutionFamily& f, const JonesTarget& target) {
  ReducedProblem out;
  const PointSet& base = f.nets.base;
  PointSet all = base;
  const PointSet* tv = std::holds_alternative<PointSet>(target)
                           ? &std::get<PointSet>(target)
                           : &std::get<PolylineCurve>(target).vertices();
  if (tv->dim() != base.dim()) throw invalid_input("target dimension differs from the family");
  for (std::size_t i = 0; i < tv->size(); ++i) all.push_back((*tv)[i]);

  if (base.dim() <= 2) {
    out.centers = PointSet(base.dim());
    for (const auto& q : f.balls) out.centers.push_back(q.center);
    out.target = target;
  } else {
    auto frame = affine_frame(all);
    out.centers = PointSet(std::max<std::size_t>(frame.rank(), 1));
    for (const auto& q : f.balls)
      out.centers.push_back(frame.rank() ? frame.coords(q.center) : Point{0.0});
    PointSet rt = frame.reduce(*tv);
    if (std::holds_alternative<PointSet>(target))
      out.target = std::move(rt);
    else
      out.target = PolylineCurve(std::move(rt));
  }
  for (const auto& q : f.balls) out.radii.push_back(q.radius);
  return out;
}

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) fn(i);
    });
}

}  // namespace detail

/// beta of `target` in a single ball.
inline BetaValue beta_of_target(const JonesTarget& target, const Ball& q, int oracle_grid = 0) {
  if (const auto* pts = std::get_if<PointSet>(&target)) {
    if (oracle_grid > 0) return beta_oracle_2d(*pts, q, oracle_grid);
    return beta_points(*pts, q);
  }
  return beta_polyline(std::get<PolylineCurve>(target), q);
}

namespace detail {

inline std::vector<JonesRow> ball_rows(const MultiresolutionFamily& f, const JonesTarget& target,
                                       const JonesOptions& opt) {
  std::vector<JonesRow> rows(f.balls.size());
  if (f.balls.empty()) return rows;
  auto red = reduce_problem(f, target);
  parallel_for(f.balls.size(), opt.threads, [&](std::size_t i) {
    const Ball& orig = f.balls[i];
    Ball q{red.centers.point(i), red.radii[i], orig.level, orig.center_index};
    double b = beta_of_target(red.target, q, opt.oracle_grid).value;
    rows[i] = JonesRow{i, orig.level, orig.center_index, b, q.diam(), b * b * q.diam()};
  });
  return rows;
}

/// Largest radius r such that, for every r' <= r, the curve inside
/// Ball(x, r') is a union of segments from x of length r' (possibly none).
inline double cone_radius(Coords x, const PolylineCurve& c) {
  const auto& v = c.vertices();
  double scale = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) scale = std::max(scale, distance(x, v[i]));
  const double on_tol = 1e-12 * std::max(scale, 1.0);
  double r = std::numeric_limits<double>::infinity();
  if (v.size() == 1) return std::max(distance(x, v[0]), on_tol);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    double len = distance(v[i], v[i + 1]);
    if (len == 0.0) continue;
    double d = point_segment_distance(x, v[i], v[i + 1]);
    if (d > on_tol) {
      r = std::min(r, d);
      continue;
    }
    double da = distance(x, v[i]), db = distance(x, v[i + 1]);
    if (da > on_tol) r = std::min(r, da);
    if (db > on_tol) r = std::min(r, db);
  }
  return r;
}

inline void append_scale_tail(const MultiresolutionFamily& f, const PolylineCurve& curve,
                              const JonesOptions& opt, JonesReport& rep) {
  constexpr int kMaxExtraLevels = 60;
  const auto& nets = f.nets;
  const PointSet& k = nets.base;
  const double unit = nets.unit;
  const int first = nets.n_max + 1;
  int n_star = std::max(first, auto_n_max(k, f.A, unit));
  for (std::size_t i = 0; i < k.size(); ++i) {
    double r = cone_radius(k[i], curve) * (1.0 - 1e-6);
    if (!std::isfinite(r)) continue;
    // smallest n with A·unit·2^-n·(1 + slack) <= r
    int n = static_cast<int>(std::ceil(std::log2(f.A * unit * (1.0 + kBoundarySlack) / r)));
    n_star = std::max(n_star, n);
  }
  n_star = std::min(n_star, nets.n_max + kMaxExtraLevels);

  MultiresolutionFamily ext = build_family(build_nested_nets(k, nets.n0, n_star, unit), f.A);
  std::erase_if(ext.balls, [&](const Ball& b) { return b.level < first; });
  auto rows = ball_rows(ext, curve, opt);
  const std::size_t offset = rep.per_ball.size();
  for (auto& r : rows) {
    r.ball += offset;
    if (r.level == n_star) {
      // levels n_star, n_star + 1, ... with diam halving each time
      r.tail = true;
      r.contribution *= 2.0;
    }
    rep.per_ball.push_back(r);
  }
}

}  // namespace detail

/// Sum of beta(target, Q)^2 · diam(Q) over the family. Per-ball values are
/// computed independently and reduced in ball order, so the total does not
/// depend on the thread count.
inline JonesReport jones_sum(const MultiresolutionFamily& f, const JonesTarget& target,
                             const JonesOptions& opt = {}) {
  if (f.balls.empty()) throw invalid_input("jones_sum over an empty family");
  JonesReport rep;
  rep.per_ball = detail::ball_rows(f, target, opt);
  if (opt.scale_tail)
    if (const auto* c = std::get_if<PolylineCurve>(&target)) detail::append_scale_tail(f, *c, opt, rep);
  for (const auto& r : rep.per_ball) rep.total_sum += r.contribution;
  rep.diam_K = diameter(f.nets.base);
  rep.rhs = rep.diam_K + rep.total_sum;
  return rep;
}

/// J(x): sum of beta^2 over the balls of the report's family that contain x.
inline double jones_function(Coords x, const MultiresolutionFamily& f, const JonesReport& rep) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.balls.size(); ++i)
    if (in_ball(x, f.balls[i])) s += rep.per_ball[i].beta * rep.per_ball[i].beta;
  return s;
}

inline double jones_function(Coords x, const MultiresolutionFamily& f, const JonesTarget& target) {
  return jones_function(x, f, jones_sum(f, target));
}

struct IntegralEstimate {
  double value = 0.0;
  std::size_t evaluations = 0;
  /// Strata skipped because the clipped length came out as zero.
  std::size_t zero_length_warnings = 0;
};

/// Deterministic stratified estimate of
///   ∫_0^∞ ∫_Γ beta_Γ(Ball(x, A t))^2 / H¹(Γ ∩ Ball(x, t)) dx dt.
/// x runs over `x_samples` arclength cell midpoints; t runs over dyadic
/// octaves from the smallest vertex gap up to diam(Γ), with `t_per_octave`
/// log-midpoint samples per octave.
inline IntegralEstimate integral_estimate(const PolylineCurve& gamma, double A, int x_samples,
                                          int t_per_octave = 2) {
  if (gamma.length() <= 0.0) throw invalid_input("integral_estimate needs a curve of positive length");
  if (!(A > 0)) throw invalid_input("A must be positive");
  if (x_samples < 1 || t_per_octave < 1) throw invalid_input("sample counts must be positive");
  const double L = gamma.length();
  const double diam = diameter(gamma.vertices());
  double gap = min_pairwise_gap(gamma.vertices());
  if (!std::isfinite(gap)) gap = diam;
  const int j_lo = static_cast<int>(std::floor(-std::log2(diam)));
  const int j_hi = static_cast<int>(std::ceil(-std::log2(gap)));

  // Balls holding the whole curve all see the same planar point set, whose
  // best-line sup distance does not depend on the ball.
  std::optional<double> full_sup;
  {
    const double R = diam / 2.0;
    if (R > 0.0) {
      auto bf = beta_of_points(gamma.vertices(), Ball{gamma.vertices().point(0), R});
      if (bf.method == BetaMethod::exact2d && bf.value < 1.0) full_sup = bf.value * R;
    }
  }

  IntegralEstimate est;
  const double dx = L / x_samples;
  for (int xi = 0; xi < x_samples; ++xi) {
    Point x = gamma.at((xi + 0.5) * dx);
    double reach = 0.0;
    for (std::size_t v = 0; v < gamma.size(); ++v) reach = std::max(reach, distance(x, gamma.vertices()[v]));
    for (int j = j_lo; j <= j_hi; ++j) {
      const double a = std::ldexp(1.0, -j - 1);
      for (int s = 0; s < t_per_octave; ++s) {
        double t0 = a * std::exp2(static_cast<double>(s) / t_per_octave);
        double t1 = a * std::exp2(static_cast<double>(s + 1) / t_per_octave);
        double t = a * std::exp2((s + 0.5) / t_per_octave);
        double h1 = clip_length(gamma, Ball{x, t});
        ++est.evaluations;
        if (!(h1 > 0.0)) {
          ++est.zero_length_warnings;
          continue;
        }
        double b = full_sup && reach < A * t ? std::min(1.0, *full_sup / (A * t))
                                             : beta_polyline(gamma, Ball{x, A * t}).value;
        est.value += b * b / h1 * (t1 - t0) * dx;
      }
    }
  }
  return est;
}

}  // namespace atsp
