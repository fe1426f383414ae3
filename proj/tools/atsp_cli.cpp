// Command-line front end: dataset generation, the individual analyses, and
// the end-to-end comparison.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "atsp/atsp.hpp"

namespace {

using namespace atsp;

struct Common {
  std::string dataset = "koch";
  int size = 3;
  std::size_t dim = 0;
  std::uint64_t seed = 1;
  double step = 0.05;
  std::string input;
  bool as_curve = false;
  std::size_t embed = 0;
  std::uint64_t embed_seed = 7;
  std::optional<double> A;
  double eps0 = 0.1;
  std::optional<int> n0;
  std::optional<int> n_max;
  std::string out = "json";
  std::string output;
  unsigned threads = 1;
};

void add_source(CLI::App* sub, Common& c) {
  sub->add_option("--dataset", c.dataset, "koch|circle|spiral|cantor4|random_walk|uniform_square|collinear")
      ->capture_default_str();
  sub->add_option("--size", c.size, "iteration count (koch, cantor4) or point count")->capture_default_str();
  sub->add_option("--dim", c.dim, "ambient dimension (0 = natural)");
  sub->add_option("--seed", c.seed, "generator seed")->capture_default_str();
  sub->add_option("--step", c.step, "random_walk step length")->capture_default_str();
  sub->add_option("--input", c.input, "point CSV (overrides --dataset)");
  sub->add_flag("--as-curve", c.as_curve, "treat --input rows as polyline vertices in order");
  sub->add_option("--embed", c.embed, "isometrically embed into this dimension");
  sub->add_option("--embed-seed", c.embed_seed, "seed for --embed")->capture_default_str();
}

void add_analysis(CLI::App* sub, Common& c) {
  sub->add_option("--A", c.A, "ball inflation constant (default 4; construct 8)");
  sub->add_option("--eps0", c.eps0, "construction flatness threshold")->capture_default_str();
  sub->add_option("--n0", c.n0, "coarsest net level");
  sub->add_option("--nmax", c.n_max, "finest net level");
  sub->add_option("--threads", c.threads, "worker threads for per-ball betas")->capture_default_str();
}

void add_output(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  sub->add_option("-o,--output", c.output, "write to this file instead of stdout");
}

Dataset load(const Common& c) {
  Dataset ds;
  if (!c.input.empty()) {
    ds.id = "custom_" + c.input;
    ds.points = read_points_csv(c.input);
    if (c.dim) ds.points = detail::pad(ds.points, c.dim);
    if (c.as_curve) ds.curve = PolylineCurve(ds.points);
  } else {
    DatasetSpec spec;
    spec.kind = parse_dataset_kind(c.dataset);
    spec.size = c.size;
    spec.dim = c.dim;
    spec.seed = c.seed;
    spec.step = c.step;
    ds = generate(spec);
  }
  if (c.embed) ds = embed_isometric(ds, c.embed, c.embed_seed);
  if (ds.points.empty()) throw invalid_input("dataset has no points");
  return ds;
}

const PolylineCurve& need_curve(const Dataset& ds) {
  if (!ds.curve) throw invalid_input("dataset " + ds.id + " has no curve (use --as-curve with --input)");
  return *ds.curve;
}

MultiresolutionFamily family_for(const Dataset& ds, const Common& c) {
  const double A = c.A.value_or(4.0);
  int n0 = c.n0.value_or(auto_n0(ds.points));
  int n_max = c.n_max.value_or(auto_n_max(ds.points, A));
  auto nets = build_nested_nets(ds.points, n0, std::max(n0, n_max));
  if (auto bad = check_net_invariants(nets)) throw invariant_violation(*bad);
  return build_family(std::move(nets), A);
}

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw invalid_input("cannot write " + path);
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void merge(Json& dst, const Json& src) {
  for (auto it = src.begin(); it != src.end(); ++it) dst[it.key()] = it.value();
}

void emit(const Common& c, const Json& j) { Sink(c.output).os() << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jones beta numbers, nets, MST and curve construction for finite point sets"};
  app.require_subcommand(1);
  Common c;

  auto* gen = app.add_subcommand("gen", "generate a dataset as point CSV");
  add_source(gen, c);
  bool gen_curve = false;
  gen->add_flag("--curve", gen_curve, "write the curve's vertices instead of the points");
  gen->add_option("-o,--output", c.output, "write to this file instead of stdout");

  auto* nets = app.add_subcommand("nets", "nested nets and the ball family as JSON");
  add_source(nets, c);
  add_analysis(nets, c);
  add_output(nets, c);

  auto* bsum = app.add_subcommand("beta-sum", "Jones square sum over the ball family");
  add_source(bsum, c);
  add_analysis(bsum, c);
  add_output(bsum, c);
  std::string target = "points";
  bool tail = false;
  int oracle_grid = 0;
  bsum->add_option("--target", target, "measure betas on the points or the curve")
      ->check(CLI::IsMember({"points", "curve"}))
      ->capture_default_str();
  bsum->add_flag("--tail", tail, "curve target: continue past n_max to all scales");
  bsum->add_option("--oracle-grid", oracle_grid, "planar points: use the direction-grid oracle");

  auto* integ = app.add_subcommand("integral", "continuous form of the Jones sum on a curve");
  add_source(integ, c);
  add_analysis(integ, c);
  add_output(integ, c);
  int x_samples = 256, t_per_octave = 2;
  integ->add_option("--x-samples", x_samples, "arclength samples")->capture_default_str();
  integ->add_option("--t-per-octave", t_per_octave, "radius samples per octave")->capture_default_str();

  auto* cons = app.add_subcommand("construct", "local farthest-insertion construction");
  add_source(cons, c);
  add_analysis(cons, c);
  add_output(cons, c);
  std::string trace_path, h_edges_path;
  bool strict_p1 = false;
  cons->add_option("--trace", trace_path, "write the per-insertion trace (JSON lines)");
  cons->add_option("--h-edges", h_edges_path, "write the virtual graph's edges (CSV)");
  cons->add_flag("--strict-p1", strict_p1, "fail instead of repairing a missing swap segment");

  auto* mstc = app.add_subcommand("mst", "exact minimum spanning tree and its Euler tour");
  add_source(mstc, c);
  add_output(mstc, c);
  std::string tour_path;
  mstc->add_option("--tour", tour_path, "write the doubled-edge tour (CSV)");

  auto* filt = app.add_subcommand("filtration", "arc betas over dyadic parameter splittings");
  add_source(filt, c);
  add_output(filt, c);
  int depth = 8, J = 1;
  filt->add_option("--depth", depth, "number of levels below the whole curve")->capture_default_str();
  filt->add_option("--J", J, "halvings per level")->capture_default_str();

  auto* cmp = app.add_subcommand("compare", "full comparison report for one dataset");
  add_source(cmp, c);
  add_analysis(cmp, c);
  add_output(cmp, c);
  bool no_timing = false, no_construct = false;
  double a_construct = 8.0;
  cmp->add_option("--A-construct", a_construct, "A for the construction")->capture_default_str();
  cmp->add_flag("--no-timing", no_timing, "omit wall times (byte-stable output)");
  cmp->add_flag("--no-construct", no_construct, "skip the construction");

  auto* suite = app.add_subcommand("suite", "comparison reports for the standard dataset suite");
  add_analysis(suite, c);
  add_output(suite, c);
  suite->add_option("--A-construct", a_construct, "A for the construction")->capture_default_str();
  suite->add_flag("--no-timing", no_timing, "omit wall times (byte-stable output)");
  suite->add_option("--embed", c.embed, "isometrically embed every dataset into this dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      Dataset ds = load(c);
      Sink sink(c.output);
      write_points_csv(sink.os(), gen_curve ? need_curve(ds).vertices() : ds.points);
    } else if (*nets) {
      emit(c, to_json(family_for(load(c), c)));
    } else if (*bsum) {
      Dataset ds = load(c);
      auto f = family_for(ds, c);
      JonesOptions jo;
      jo.threads = c.threads;
      jo.oracle_grid = oracle_grid;
      jo.scale_tail = tail;
      JonesTarget t = ds.points;
      if (target == "curve") t = need_curve(ds);
      auto rep = jones_sum(f, t, jo);
      if (c.out == "csv") {
        Sink sink(c.output);
        write_jones_csv(sink.os(), rep);
      } else {
        Json j{{"dataset", ds.id}, {"target", target}, {"A", f.A}, {"n0", f.nets.n0}, {"n_max", f.nets.n_max}};
        merge(j, to_json(rep));
        emit(c, j);
      }
    } else if (*integ) {
      Dataset ds = load(c);
      const auto& curve = need_curve(ds);
      const double A = c.A.value_or(4.0);
      auto est = integral_estimate(curve, A, x_samples, t_per_octave);
      Json j{{"dataset", ds.id}, {"A", A}, {"x_samples", x_samples}, {"t_per_octave", t_per_octave}};
      merge(j, to_json(est));
      emit(c, j);
    } else if (*cons) {
      Dataset ds = load(c);
      ConstructionParams p;
      p.A = c.A.value_or(8.0);
      p.eps0 = c.eps0;
      p.n0 = c.n0;
      p.strict_p1 = strict_p1;
      auto res = construct(ds.points, p);
      if (!trace_path.empty()) write_trace_jsonl(Sink(trace_path).os(), res.state);
      if (!h_edges_path.empty()) write_edges_csv(Sink(h_edges_path).os(), res.state.H);
      if (c.out == "csv") {
        write_edges_csv(Sink(c.output).os(), res.state.G);
      } else {
        Json j{{"dataset", ds.id}, {"A", p.A}, {"eps0", p.eps0}};
        merge(j, construction_summary(res));
        emit(c, j);
      }
    } else if (*mstc) {
      Dataset ds = load(c);
      auto tree = mst(ds.points);
      if (!tour_path.empty()) write_tour_csv(Sink(tour_path).os(), euler_tour(tree), tree.vertices());
      if (c.out == "csv") {
        write_edges_csv(Sink(c.output).os(), tree);
      } else {
        emit(c, Json{{"dataset", ds.id},
                     {"n_points", ds.points.size()},
                     {"diam", diameter(ds.points)},
                     {"mst_length", total_length(tree)},
                     {"edges", tree.edges().size()}});
      }
    } else if (*filt) {
      Dataset ds = load(c);
      auto f = dyadic_filtration(need_curve(ds), depth, J);
      auto rows = filtration_rows(f);
      if (c.out == "csv") {
        write_filtration_csv(Sink(c.output).os(), rows);
      } else {
        Json j{{"dataset", ds.id}, {"depth", depth}, {"J", J}};
        merge(j, to_json(rows, f.curve.length()));
        emit(c, j);
      }
    } else if (*cmp || *suite) {
      CompareOptions o;
      o.A = c.A.value_or(4.0);
      o.A_construct = a_construct;
      o.eps0 = c.eps0;
      o.n0 = c.n0;
      o.n_max = c.n_max;
      o.threads = c.threads;
      o.run_construction = !no_construct;
      std::vector<ComparisonReport> reports;
      if (*cmp) {
        reports.push_back(compare(load(c), c.input.empty() ? c.seed : 0, o));
      } else {
        o.embed_dim = c.embed;
        o.embed_seed = c.embed_seed;
        for (const auto& spec : standard_suite()) reports.push_back(compare(spec, o));
      }
      if (c.out == "csv") {
        Sink sink(c.output);
        auto& os = detail::full_precision(sink.os());
        os << "dataset,dim,n_points,diam,jones_sum_K,jones_sum_Gamma,mst_length,construction_G,construction_GH,r1,r2,"
              "r2_G,r3\n";
        auto opt = [](const std::optional<double>& v) {
          if (!v) return std::string();
          std::ostringstream ss;
          detail::full_precision(ss) << *v;
          return ss.str();
        };
        for (const auto& r : reports)
          os << r.dataset << ',' << r.dim << ',' << r.n_points << ',' << r.diam << ',' << r.jones_sum_K << ','
             << opt(r.jones_sum_Gamma) << ',' << r.mst_length << ',' << opt(r.construction_G) << ','
             << opt(r.construction_GH) << ',' << r.r1 << ',' << opt(r.r2) << ',' << opt(r.r2_G) << ','
             << opt(r.r3) << '\n';
      } else if (*cmp) {
        emit(c, to_json(reports.front(), !no_timing));
      } else {
        Json arr = Json::array();
        for (const auto& r : reports) arr.push_back(to_json(r, !no_timing));
        emit(c, arr);
      }
    }
  } catch (const invariant_violation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 1;
  } catch (const invalid_input& e) {
    std::cerr << "bad input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
