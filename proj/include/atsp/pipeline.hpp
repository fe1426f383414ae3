#pragma once

// End-to-end comparison of the Jones functional against the exact MST and the
// local farthest-insertion construction on one dataset.

#include <chrono>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "atsp/construction.hpp"
#include "atsp/datasets.hpp"
#include "atsp/jones.hpp"
#include "atsp/mst.hpp"
#include "atsp/nets.hpp"

namespace atsp {

struct CompareOptions {
  double A = 4.0;
  double A_construct = 8.0;
  double eps0 = 0.1;
  std::optional<int> n0;
  std::optional<int> n_max;
  std::size_t embed_dim = 0;  // 0 = keep the dataset's own dimension
  std::uint64_t embed_seed = 7;
  unsigned threads = 1;
  bool run_construction = true;
};

struct ComparisonReport {
  std::string dataset;
  std::uint64_t seed = 0;
  std::size_t dim = 0;
  std::size_t n_points = 0;
  double A = 0.0;
  double A_construct = 0.0;
  double eps0 = 0.0;
  int n0 = 0;
  int n_max = 0;
  std::size_t ball_count = 0;

  double diam = 0.0;
  double jones_sum_K = 0.0;
  std::optional<double> jones_sum_Gamma;
  std::optional<double> curve_length;
  double mst_length = 0.0;
  std::optional<double> construction_G;
  std::optional<double> construction_GH;
  std::map<int, std::size_t> case_counts;
  std::size_t p1_repairs = 0;

  double r1 = 0.0;                // (diam + jones_sum_K) / mst_length
  std::optional<double> r2;       // construction_GH / (diam + jones_sum_K)
  std::optional<double> r2_G;     // construction_G / (diam + jones_sum_K)
  std::optional<double> r3;       // jones_sum_Gamma / curve_length

  std::map<std::string, double> wall_seconds;
};

namespace detail {

class Stopwatch {
 public:
  double lap() {
    auto now = std::chrono::steady_clock::now();
    double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace detail

inline ComparisonReport compare(const Dataset& ds, std::uint64_t seed, const CompareOptions& opt = {}) {
  if (ds.points.size() < 2) throw invalid_input("compare needs at least two points");
  detail::Stopwatch sw;
  ComparisonReport rep;
  rep.dataset = ds.id;
  rep.seed = seed;
  rep.dim = ds.points.dim();
  rep.n_points = ds.points.size();
  rep.A = opt.A;
  rep.A_construct = opt.A_construct;
  rep.eps0 = opt.eps0;
  rep.n0 = opt.n0.value_or(auto_n0(ds.points));
  rep.n_max = opt.n_max.value_or(auto_n_max(ds.points, opt.A));
  if (rep.n_max < rep.n0) rep.n_max = rep.n0;

  auto nets = build_nested_nets(ds.points, rep.n0, rep.n_max);
  if (auto bad = check_net_invariants(nets)) throw invariant_violation(*bad);
  auto family = build_family(std::move(nets), opt.A);
  rep.ball_count = family.size();
  rep.wall_seconds["nets"] = sw.lap();

  JonesOptions jo;
  jo.threads = opt.threads;
  auto jk = jones_sum(family, ds.points, jo);
  rep.diam = jk.diam_K;
  rep.jones_sum_K = jk.total_sum;
  rep.wall_seconds["jones_K"] = sw.lap();
  if (ds.curve) {
    JonesOptions jg = jo;
    jg.scale_tail = true;
    rep.jones_sum_Gamma = jones_sum(family, *ds.curve, jg).total_sum;
    rep.curve_length = ds.curve->length();
    rep.r3 = *rep.jones_sum_Gamma / *rep.curve_length;
    rep.wall_seconds["jones_Gamma"] = sw.lap();
  }

  auto tree = mst(ds.points);
  rep.mst_length = total_length(tree);
  if (rep.diam > rep.mst_length * (1.0 + 1e-12)) throw invariant_violation("diam(K) exceeds MST length");
  rep.r1 = (rep.diam + rep.jones_sum_K) / rep.mst_length;
  rep.wall_seconds["mst"] = sw.lap();

  if (opt.run_construction) {
    ConstructionParams cp;
    cp.A = opt.A_construct;
    cp.eps0 = opt.eps0;
    cp.check_each_step = false;
    auto res = construct(ds.points, cp);
    std::vector<std::size_t> all(ds.points.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (!is_connected(res.state.G, all)) throw invariant_violation("construction left G disconnected");
    rep.construction_G = res.length_G();
    rep.construction_GH = res.length_GH();
    for (const auto& c : res.state.case_log) ++rep.case_counts[c.case_id];
    rep.p1_repairs = res.state.p1_repairs;
    rep.r2 = *rep.construction_GH / (rep.diam + rep.jones_sum_K);
    rep.r2_G = *rep.construction_G / (rep.diam + rep.jones_sum_K);
    rep.wall_seconds["construction"] = sw.lap();
  }
  return rep;
}

inline ComparisonReport compare(const DatasetSpec& spec, const CompareOptions& opt = {}) {
  Dataset ds = generate(spec);
  if (opt.embed_dim) ds = embed_isometric(ds, opt.embed_dim, opt.embed_seed);
  return compare(ds, spec.seed, opt);
}

/// The standard dataset suite: koch 1..6, circle 64, spiral, cantor4 1..5,
/// uniform_square 500, random_walk 500.
inline std::vector<DatasetSpec> standard_suite() {
  std::vector<DatasetSpec> s;
  auto add = [&](DatasetKind kind, int size) {
    DatasetSpec d;
    d.kind = kind;
    d.size = size;
    s.push_back(d);
  };
  for (int k = 1; k <= 6; ++k) add(DatasetKind::koch, k);
  add(DatasetKind::circle, 64);
  add(DatasetKind::spiral, 200);
  for (int k = 1; k <= 5; ++k) add(DatasetKind::cantor4, k);
  add(DatasetKind::uniform_square, 500);
  add(DatasetKind::random_walk, 500);
  return s;
}

}  // namespace atsp
