#pragma once

// Local farthest insertion: grows a connected graph G through the points of K
// in farthest-first order, with an accounting graph H of virtual segments
// next to it. Each insertion is resolved by one of five cases driven by the
// flatness of the data near the new point and by which of two cones around
// the nearest earlier point already hold data.

#include <algorithm>
#include <climits>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "atsp/beta.hpp"
#include "atsp/graph.hpp"
#include "atsp/nets.hpp"

namespace atsp {

struct InsertionOrder {
  std::vector<std::size_t> order;
  /// Indexed by point: distance to the nearest earlier point (diam(K) for
  /// the first two).
  std::vector<double> d;
  /// Indexed by point: the n with 2^-n <= d/unit < 2^-n+1, clamped below at n0.
  std::vector<int> level_of;
  /// Indexed by point: nearest earlier point (npos for the first).
  std::vector<std::size_t> nearest_prior;
};

inline int level_for_distance(double d, int n0, double unit = 1.0) {
  if (!(d > 0.0)) return INT_MAX / 2;
  return std::max(n0, static_cast<int>(std::ceil(-std::log2(d / unit))));
}

/// Starts with a diameter pair (lowest indices on ties), then repeatedly
/// takes the point farthest from everything inserted so far.
inline InsertionOrder farthest_insertion_order(const PointSet& k, std::optional<int> n0 = {},
                                               double unit = 1.0) {
  if (k.size() < 2) throw invalid_input("farthest insertion needs at least two points");
  const std::size_t n = k.size();
  const int base_level = n0.value_or(auto_n0(k, unit));
  InsertionOrder out;
  out.d.assign(n, 0.0);
  out.level_of.assign(n, base_level);
  out.nearest_prior.assign(n, npos);

  auto [p1, p2] = diameter_pair(k);
  const double diam = distance(k[p1], k[p2]);
  std::vector<double> mind(n, std::numeric_limits<double>::infinity());
  std::vector<char> in(n, 0);
  auto absorb = [&](std::size_t u) {
    in[u] = 1;
    out.order.push_back(u);
    for (std::size_t j = 0; j < n; ++j) {
      if (in[j]) continue;
      double dj = distance(k[u], k[j]);
      if (dj < mind[j] || (dj == mind[j] && u < out.nearest_prior[j])) {
        mind[j] = dj;
        out.nearest_prior[j] = u;
      }
    }
  };
  out.d[p1] = out.d[p2] = diam;
  out.level_of[p1] = out.level_of[p2] = level_for_distance(diam, base_level, unit);
  absorb(p1);
  absorb(p2);
  while (out.order.size() < n) {
    std::size_t best = npos;
    for (std::size_t j = 0; j < n; ++j)
      if (!in[j] && (best == npos || mind[j] > mind[best])) best = j;
    out.d[best] = mind[best];
    out.level_of[best] = level_for_distance(mind[best], base_level, unit);
    absorb(best);
  }
  return out;
}

/// Coordinates around the nearest earlier point: Re(z) is the signed position
/// along the axis towards x0, dist(z, axis) the distance to that axis.
struct ConeFrame {
  Point origin;
  std::size_t origin_index = npos;
  Line axis;
  Ball half_ball;

  double re(Coords z) const {
    return detail::dot(detail::sub(z, origin), axis.direction);
  }
  double off_axis(Coords z) const { return point_line_distance(z, axis); }
};

inline ConeFrame make_cone_frame(const PointSet& k, std::size_t origin, std::size_t x0,
                                 const Ball& q) {
  return ConeFrame{k.point(origin), origin, line_through(k[origin], k[x0]),
                   Ball{q.center, 0.5 * q.radius, q.level, q.center_index}};
}

struct ConeMembership {
  bool w = false;
  bool w_star = false;
};

/// W: inside half of Q with -Re(z) <= dist(z, axis)/sqrt(3) (the forward
/// cone, including everything beside the origin). W*: same with Re(z), the
/// backward cone. Points with Re(z) = 0 belong to both.
inline ConeMembership cone_membership(Coords z, const ConeFrame& frame) {
  if (distance(z, frame.origin) == 0.0) throw invalid_input("cone membership of the origin");
  if (!in_ball(z, frame.half_ball)) return {};
  const double re = frame.re(z);
  const double lim = frame.off_axis(z) / std::numbers::sqrt3;
  return {-re <= lim, re <= lim};
}

struct CaseDecision {
  int id = 0;
  double beta = 0.0;
  /// Earlier points in W and W*, in index order.
  std::vector<std::size_t> in_w;
  std::vector<std::size_t> in_w_star;
};

/// Case 1 when beta(Q) over the earlier points in Q plus x0 reaches eps0;
/// otherwise 2/3/4/5 by (W occupied, W* occupied) = (T,T)/(T,F)/(F,T)/(F,F).
template <class BetaFn = decltype(&beta_of_points)>
CaseDecision classify_case(const PointSet& k, std::span<const std::size_t> prior, std::size_t x0,
                           const Ball& q, const ConeFrame& frame, double eps0,
                           BetaFn beta_fn = &beta_of_points) {
  CaseDecision out;
  std::vector<std::size_t> local;
  for (auto i : prior)
    if (in_ball(k[i], q)) local.push_back(i);
  local.push_back(x0);
  out.beta = beta_fn(k.subset(local), q).value;
  for (auto i : prior) {
    if (i == frame.origin_index || distance(k[i], frame.origin) == 0.0) continue;
    auto m = cone_membership(k[i], frame);
    if (m.w) out.in_w.push_back(i);
    if (m.w_star) out.in_w_star.push_back(i);
  }
  std::sort(out.in_w.begin(), out.in_w.end());
  std::sort(out.in_w_star.begin(), out.in_w_star.end());
  if (out.beta >= eps0)
    out.id = 1;
  else if (!out.in_w.empty())
    out.id = out.in_w_star.empty() ? 3 : 2;
  else
    out.id = out.in_w_star.empty() ? 5 : 4;
  return out;
}

struct ConstructionParams {
  double A = 8.0;
  double eps0 = 0.1;
  std::optional<int> n0;
  double unit = 1.0;
  /// Throw instead of repairing when a swap finds [0, y1] missing from G ∪ H.
  bool strict_p1 = false;
  /// Verify connectivity of G over the inserted points after every step.
  bool check_each_step = true;
};

struct CaseRecord {
  std::size_t index = 0;
  int case_id = 0;
  double dG = 0.0;
  double dH = 0.0;
  double beta = 0.0;
  bool on_graph = false;
  bool p1_repair = false;
};

/// G's vertices are the points of K (same indices). H's first |K| vertices
/// are the points of K; virtual end points are appended after them.
struct ConstructionState {
  GeometricGraph G;
  GeometricGraph H;
  std::vector<CaseRecord> case_log;
  std::vector<std::size_t> inserted;
  double seed_G = 0.0;
  double seed_H = 0.0;
  std::size_t p1_repairs = 0;
};

namespace detail {

inline double collinear_tol(Coords a, Coords b) { return 1e-9 * std::max(distance(a, b), 1e-300); }

/// Parameter interval covered by edge (p, q) along a + t(b - a), when the
/// edge lies on that line.
inline std::optional<std::pair<double, double>> collinear_interval(Coords p, Coords q, Coords a,
                                                                   Coords b) {
  const double tol = collinear_tol(a, b);
  Line l = line_through(a, b);
  if (point_line_distance(p, l) > tol || point_line_distance(q, l) > tol) return std::nullopt;
  const double len = distance(a, b);
  double tp = dot(sub(p, a), l.direction) / len;
  double tq = dot(sub(q, a), l.direction) / len;
  return std::pair{std::min(tp, tq), std::max(tp, tq)};
}

inline bool segment_covered(const ConstructionState& st, std::size_t a, std::size_t b) {
  Coords pa = st.G.vertices()[a], pb = st.G.vertices()[b];
  std::vector<std::pair<double, double>> iv;
  for (const auto& e : st.G.edges())
    if (auto r = collinear_interval(st.G.vertices()[e.u], st.G.vertices()[e.v], pa, pb)) iv.push_back(*r);
  for (const auto& e : st.H.edges())
    if (auto r = collinear_interval(st.H.vertices()[e.u], st.H.vertices()[e.v], pa, pb)) iv.push_back(*r);
  std::sort(iv.begin(), iv.end());
  const double eps = 1e-9;
  double reach = 0.0;
  for (const auto& [lo, hi] : iv) {
    if (lo > reach + eps) break;
    reach = std::max(reach, hi);
    if (reach >= 1.0 - eps) return true;
  }
  return false;
}

/// Removes the part of H lying on the segment [a, b] (a, b indices of K),
/// keeping the pieces of collinear H edges that stick out. Returns the net
/// change in H's length.
inline double subtract_from_h(ConstructionState& st, std::size_t a, std::size_t b) {
  Coords pa = st.G.vertices()[a], pb = st.G.vertices()[b];
  const double eps = 1e-9;
  double delta = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> pieces;
  for (std::size_t i = st.H.edges().size(); i-- > 0;) {
    Edge e = st.H.edges()[i];
    Coords pu = st.H.vertices()[e.u], pv = st.H.vertices()[e.v];
    auto r = collinear_interval(pu, pv, pa, pb);
    if (!r || r->second <= eps || r->first >= 1.0 - eps) continue;
    const double len = distance(pa, pb);
    Line l = line_through(pa, pb);
    double tu = dot(sub(pu, pa), l.direction) / len;
    std::size_t lo_end = tu <= r->first + eps ? e.u : e.v;
    std::size_t hi_end = lo_end == e.u ? e.v : e.u;
    delta -= st.H.remove_edge_at(i);
    if (r->first < -eps) pieces.push_back({lo_end, a});
    if (r->second > 1.0 + eps) pieces.push_back({b, hi_end});
  }
  for (auto [u, v] : pieces) delta += st.H.add_edge(u, v);
  return delta;
}

inline std::size_t add_virtual_segment(ConstructionState& st, std::size_t from, Coords dir,
                                       double len) {
  Coords p = st.H.vertices()[from];
  auto end = axpy(p, len, dir);
  std::size_t v = st.H.add_vertex(Point(std::move(end)));
  return v;
}

}  // namespace detail

/// Seeds G with [p1, p2] and H with the two outward rays of length A·diam(K).
inline ConstructionState seed_construction(const PointSet& k, const InsertionOrder& ord,
                                           const ConstructionParams& params) {
  ConstructionState st{GeometricGraph(k), GeometricGraph(k), {}, {}, 0.0, 0.0, 0};
  const std::size_t p1 = ord.order[0], p2 = ord.order[1];
  st.seed_G = st.G.add_edge(p1, p2);
  auto out1 = detail::normalized(detail::sub(k[p1], k[p2]));
  auto out2 = detail::normalized(detail::sub(k[p2], k[p1]));
  const double ray = params.A * st.seed_G;
  if (ray > 0) {
    st.seed_H += st.H.add_edge(p1, detail::add_virtual_segment(st, p1, out1, ray));
    st.seed_H += st.H.add_edge(p2, detail::add_virtual_segment(st, p2, out2, ray));
  }
  st.inserted = {p1, p2};
  return st;
}

/// Inserts ord.order-th point `x0` and appends its CaseRecord to the log.
inline const CaseRecord& insert_point(ConstructionState& st, const PointSet& k, std::size_t x0,
                                      const InsertionOrder& ord, const ConstructionParams& params) {
  CaseRecord rec;
  rec.index = x0;
  const std::size_t o = ord.nearest_prior[x0];
  const double d = ord.d[x0];
  const int level = ord.level_of[x0];
  const double scale = params.unit * std::ldexp(1.0, -level);

  auto add_g = [&](std::size_t u, std::size_t v) { rec.dG += st.G.add_edge(u, v); };
  auto add_h = [&](std::size_t u, std::size_t v) { rec.dH += st.H.add_edge(u, v); };
  auto stub = [&](std::size_t from, std::vector<double> dir, double len) {
    dir = detail::normalized(std::move(dir));
    add_h(from, detail::add_virtual_segment(st, from, dir, len));
  };
  auto finish = [&]() -> const CaseRecord& {
    st.inserted.push_back(x0);
    st.case_log.push_back(rec);
    if (params.check_each_step && !is_connected(st.G, st.inserted))
      throw invariant_violation("G disconnected after inserting point " + std::to_string(x0));
    return st.case_log.back();
  };

  // Coincides with an earlier point, or already lies on G: split in place.
  if (!(d > 0.0)) {
    add_g(o, x0);
    rec.case_id = 2;
    rec.on_graph = true;
    return finish();
  }
  for (std::size_t i = 0; i < st.G.edges().size(); ++i) {
    Edge e = st.G.edges()[i];
    if (point_segment_distance(k[x0], k[e.u], k[e.v]) <= 1e-9 * d) {
      rec.dG -= st.G.remove_edge_at(i);
      add_g(e.u, x0);
      add_g(x0, e.v);
      rec.case_id = 2;
      rec.on_graph = true;
      return finish();
    }
  }

  const Ball q{k.point(x0), params.A * scale, level, x0};
  const ConeFrame frame = make_cone_frame(k, o, x0, q);
  std::vector<std::size_t> prior = st.inserted;
  auto dec = classify_case(k, prior, x0, q, frame, params.eps0);
  rec.case_id = dec.id;
  rec.beta = dec.beta;
  const auto& u_axis = frame.axis.direction.vec();

  auto nearest_in = [&](const std::vector<std::size_t>& set) {
    std::size_t best = npos;
    for (auto i : set)
      if (best == npos || distance(k[i], k[o]) < distance(k[best], k[o])) best = i;
    return best;
  };
  auto farthest_in = [&](const std::vector<std::size_t>& set) {
    std::size_t best = npos;
    for (auto i : set)
      if (best == npos || distance(k[i], k[o]) > distance(k[best], k[o])) best = i;
    return best;
  };
  // Replace [o, y] by [o, x0], [x0, y].
  auto swap_through = [&](std::size_t y) {
    std::size_t e = st.G.find_edge(o, y);
    if (e != npos) {
      rec.dG -= st.G.remove_edge_at(e);
      add_g(o, x0);
      add_g(x0, y);
      return;
    }
    if (!detail::segment_covered(st, o, y)) {
      if (params.strict_p1)
        throw invariant_violation("segment [origin, y1] missing from G and H at point " +
                                  std::to_string(x0));
      add_h(o, y);
      rec.p1_repair = true;
      ++st.p1_repairs;
    }
    rec.dH += detail::subtract_from_h(st, o, y);
    const double la = distance(k[o], k[x0]), lb = distance(k[x0], k[y]);
    if (la <= lb) {
      add_g(o, x0);
      add_h(x0, y);
    } else {
      add_g(x0, y);
      add_h(o, x0);
    }
  };
  // Inserted points (earlier ones plus x0) selected by `keep`, ordered by Re.
  auto chain = [&](auto keep) {
    std::vector<std::size_t> z;
    for (auto i : st.inserted)
      if (keep(i)) z.push_back(i);
    if (keep(x0)) z.push_back(x0);
    std::stable_sort(z.begin(), z.end(), [&](std::size_t a, std::size_t b) {
      double ra = frame.re(k[a]), rb = frame.re(k[b]);
      return ra < rb || (ra == rb && a < b);
    });
    for (std::size_t i = 0; i + 1 < z.size(); ++i)
      if (!st.G.has_edge(z[i], z[i + 1])) add_g(z[i], z[i + 1]);
    return z;
  };
  // Outward stub at the back end of a chain.
  auto back_stub = [&](std::size_t z1) {
    if (z1 == o) {
      std::vector<double> back(u_axis.begin(), u_axis.end());
      for (double& c : back) c = -c;
      stub(o, back, scale);
    } else {
      stub(z1, detail::sub(k[z1], k[o]), scale);
    }
  };
  auto front_stub = [&](std::size_t zn) {
    // [z_N, 2 z_N] in coordinates centred at the origin.
    add_h(zn, st.H.add_vertex(Point(detail::axpy(k[zn], 1.0, detail::sub(k[zn], k[o])))));
  };

  switch (dec.id) {
    case 1: {
      // Cheapest local connection: a new edge to the nearest earlier point
      // in Q, or splitting a G edge with both ends in Ball(x0, A d).
      const Ball local{k.point(x0), params.A * d};
      std::size_t split = npos;
      double split_cost = d;
      for (std::size_t i = 0; i < st.G.edges().size(); ++i) {
        const Edge& e = st.G.edges()[i];
        if (!in_ball(k[e.u], local) || !in_ball(k[e.v], local)) continue;
        double c = distance(k[e.u], k[x0]) + distance(k[x0], k[e.v]) - e.length;
        if (c < split_cost) {
          split_cost = c;
          split = i;
        }
      }
      if (split == npos) {
        add_g(o, x0);
      } else {
        Edge e = st.G.edges()[split];
        rec.dG -= st.G.remove_edge_at(split);
        add_g(e.u, x0);
        add_g(x0, e.v);
      }
      // Keep segments leaving x0 into each empty cone of its own frame.
      ConeFrame at_x0{k.point(x0), x0, Line{k.point(x0), frame.axis.direction}, frame.half_ball};
      bool fwd = false, back = false;
      for (auto i : prior) {
        if (distance(k[i], k[x0]) == 0.0) continue;
        auto m = cone_membership(k[i], at_x0);
        fwd = fwd || m.w;
        back = back || m.w_star;
      }
      if (!fwd) stub(x0, u_axis, scale);
      if (!back) {
        std::vector<double> bdir(u_axis.begin(), u_axis.end());
        for (double& c : bdir) c = -c;
        stub(x0, bdir, scale);
      }
      break;
    }
    case 2: {
      swap_through(nearest_in(dec.in_w));
      break;
    }
    case 3: {
      const std::size_t y1 = nearest_in(dec.in_w);
      swap_through(y1);
      const double reach = distance(k[o], k[y1]) * (1.0 + kBoundarySlack);
      auto z = chain([&](std::size_t i) { return distance(k[i], k[o]) <= reach; });
      back_stub(z.front());
      if (farthest_in(dec.in_w) == y1) stub(y1, detail::sub(k[y1], k[o]), scale);
      break;
    }
    case 4: {
      auto z = chain([&](std::size_t i) {
        if (i == o || i == x0) return true;
        if (distance(k[i], k[o]) == 0.0) return false;
        return cone_membership(k[i], frame).w;
      });
      front_stub(z.back());
      break;
    }
    case 5: {
      const double reach = 2.0 * scale * (1.0 + kBoundarySlack);
      auto z = chain([&](std::size_t i) { return distance(k[i], k[o]) <= reach; });
      front_stub(z.back());
      back_stub(z.front());
      break;
    }
    default:
      throw invariant_violation("unknown case");
  }
  return finish();
}

struct ConstructionResult {
  InsertionOrder order;
  ConstructionState state;

  double length_G() const { return total_length(state.G); }
  double length_H() const { return total_length(state.H); }
  double length_GH() const { return length_G() + length_H(); }
};

inline ConstructionResult construct(const PointSet& k, const ConstructionParams& params = {}) {
  if (!(params.A > 1.0)) throw invalid_input("construction constant A must exceed 1");
  if (params.eps0 < 0.0) throw invalid_input("eps0 must be nonnegative");
  ConstructionResult res{farthest_insertion_order(k, params.n0, params.unit), {}};
  res.state = seed_construction(k, res.order, params);
  for (std::size_t i = 2; i < res.order.order.size(); ++i)
    insert_point(res.state, k, res.order.order[i], res.order, params);
  return res;
}

}  // namespace atsp
