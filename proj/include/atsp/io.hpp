#pragma once

// JSON and CSV exports. JSON uses insertion-ordered objects so identical
// inputs give byte-identical output.

#include <json.hpp>

#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "atsp/construction.hpp"
#include "atsp/filtration.hpp"
#include "atsp/graph.hpp"
#include "atsp/jones.hpp"
#include "atsp/nets.hpp"
#include "atsp/pipeline.hpp"

namespace atsp {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::ostream& full_precision(std::ostream& os) {
  return os << std::setprecision(std::numeric_limits<double>::max_digits10);
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace detail

inline Json to_json(const NestedNets& nets) {
  Json levels = Json::array();
  for (const auto& [n, mem] : nets.levels) levels.push_back(Json{{"n", n}, {"members", mem}});
  return Json{{"n0", nets.n0}, {"n_max", nets.n_max}, {"unit", nets.unit}, {"levels", std::move(levels)}};
}

inline Json to_json(const MultiresolutionFamily& f) {
  Json j = to_json(f.nets);
  Json out{{"A", f.A}, {"ball_count", f.size()}};
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = it.value();
  return out;
}

inline Json to_json(const JonesReport& r) {
  Json rows = Json::array();
  for (const auto& b : r.per_ball)
    rows.push_back(Json{{"ball", b.ball},
                        {"level", b.level},
                        {"center_index", b.center_index},
                        {"beta", b.beta},
                        {"diam", b.diam},
                        {"contribution", b.contribution},
                        {"tail", b.tail}});
  return Json{{"total_sum", r.total_sum}, {"diam_K", r.diam_K}, {"rhs", r.rhs}, {"per_ball", std::move(rows)}};
}

inline void write_jones_csv(std::ostream& os, const JonesReport& r) {
  detail::full_precision(os) << "level,center_index,beta,diam,contribution\n";
  for (const auto& b : r.per_ball)
    os << b.level << ',' << b.center_index << ',' << b.beta << ',' << b.diam << ',' << b.contribution << '\n';
}

inline Json to_json(const IntegralEstimate& e) {
  return Json{{"value", e.value}, {"evaluations", e.evaluations}, {"zero_length_warnings", e.zero_length_warnings}};
}

inline Json to_json(const CaseRecord& c) {
  return Json{{"index", c.index}, {"case", c.case_id}, {"dG", c.dG},           {"dH", c.dH},
              {"beta", c.beta},   {"on_graph", c.on_graph}, {"p1_repair", c.p1_repair}};
}

/// One JSON object per line, one line per insertion.
inline void write_trace_jsonl(std::ostream& os, const ConstructionState& st) {
  for (const auto& c : st.case_log) os << to_json(c).dump() << '\n';
}

inline Json construction_summary(const ConstructionResult& r) {
  std::map<std::string, std::size_t> counts;
  for (const auto& c : r.state.case_log) ++counts[std::to_string(c.case_id)];
  return Json{{"points", r.state.inserted.size()},
              {"length_G", r.length_G()},
              {"length_H", r.length_H()},
              {"length_GH", r.length_GH()},
              {"seed_G", r.state.seed_G},
              {"seed_H", r.state.seed_H},
              {"p1_repairs", r.state.p1_repairs},
              {"case_counts", counts}};
}

inline void write_edges_csv(std::ostream& os, const GeometricGraph& g) {
  detail::full_precision(os) << "u,v,length\n";
  for (const auto& e : g.edges()) os << e.u << ',' << e.v << ',' << e.length << '\n';
}

inline void write_tour_csv(std::ostream& os, const std::vector<std::size_t>& walk, const PointSet& pts) {
  detail::full_precision(os) << "step,vertex";
  for (std::size_t c = 0; c < pts.dim(); ++c) os << ",x" << c;
  os << '\n';
  for (std::size_t i = 0; i < walk.size(); ++i) {
    os << i << ',' << walk[i];
    for (double x : pts[walk[i]]) os << ',' << x;
    os << '\n';
  }
}

inline void write_filtration_csv(std::ostream& os, const std::vector<ArcRow>& rows) {
  detail::full_precision(os) << "n,arc_index,a,b,diam,beta_tilde,contribution\n";
  for (const auto& r : rows)
    os << r.level << ',' << r.index << ',' << r.arc.a << ',' << r.arc.b << ',' << r.diam << ',' << r.beta_tilde
       << ',' << r.contribution << '\n';
}

inline Json to_json(const std::vector<ArcRow>& rows, double length) {
  double total = 0.0;
  std::map<int, double> per_level;
  for (const auto& r : rows) {
    total += r.contribution;
    per_level[r.level] += r.contribution;
  }
  Json levels = Json::array();
  for (const auto& [n, s] : per_level) levels.push_back(Json{{"n", n}, {"sum", s}});
  return Json{{"curve_length", length}, {"square_sum", total}, {"ratio", total / length}, {"levels", levels}};
}

/// Everything except wall times is a function of the inputs; `with_timing`
/// controls whether the "wall_seconds" object is emitted.
inline Json to_json(const ComparisonReport& r, bool with_timing = true) {
  Json counts = Json::object();
  for (const auto& [k, v] : r.case_counts) counts[std::to_string(k)] = v;
  Json j{{"dataset", r.dataset},
         {"seed", r.seed},
         {"dim", r.dim},
         {"n_points", r.n_points},
         {"A", r.A},
         {"A_construct", r.A_construct},
         {"eps0", r.eps0},
         {"n0", r.n0},
         {"n_max", r.n_max},
         {"ball_count", r.ball_count},
         {"diam", r.diam},
         {"jones_sum_K", r.jones_sum_K},
         {"jones_sum_Gamma", detail::optional_json(r.jones_sum_Gamma)},
         {"curve_length", detail::optional_json(r.curve_length)},
         {"mst_length", r.mst_length},
         {"construction_G", detail::optional_json(r.construction_G)},
         {"construction_GH", detail::optional_json(r.construction_GH)},
         {"case_counts", counts},
         {"p1_repairs", r.p1_repairs},
         {"r1", r.r1},
         {"r2", detail::optional_json(r.r2)},
         {"r2_G", detail::optional_json(r.r2_G)},
         {"r3", detail::optional_json(r.r3)}};
  if (with_timing) j["wall_seconds"] = r.wall_seconds;
  return j;
}

}  // namespace atsp
