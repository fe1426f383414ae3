#pragma once

// Deterministic test corpora and the random isometric embedding used to move
// them into higher ambient dimensions.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "atsp/csv.hpp"
#include "atsp/geometry.hpp"
#include "atsp/polyline.hpp"

namespace atsp {

enum class DatasetKind { koch, circle, spiral, cantor4, random_walk, uniform_square, collinear, custom_file };

inline const char* to_string(DatasetKind k) {
  switch (k) {
    case DatasetKind::koch: return "koch";
    case DatasetKind::circle: return "circle";
    case DatasetKind::spiral: return "spiral";
    case DatasetKind::cantor4: return "cantor4";
    case DatasetKind::random_walk: return "random_walk";
    case DatasetKind::uniform_square: return "uniform_square";
    case DatasetKind::collinear: return "collinear";
    case DatasetKind::custom_file: return "custom_file";
  }
  return "?";
}

inline DatasetKind parse_dataset_kind(const std::string& s) {
  for (auto k : {DatasetKind::koch, DatasetKind::circle, DatasetKind::spiral, DatasetKind::cantor4,
                 DatasetKind::random_walk, DatasetKind::uniform_square, DatasetKind::collinear,
                 DatasetKind::custom_file})
    if (s == to_string(k)) return k;
  throw invalid_input("unknown dataset kind: " + s);
}

/// `size` is the iteration count for koch/cantor4 and the point count for
/// the others. `dim` is the ambient dimension where the kind allows one
/// (0 = the kind's natural dimension).
struct DatasetSpec {
  DatasetKind kind = DatasetKind::koch;
  int size = 3;
  std::size_t dim = 0;
  double step = 0.05;   // random_walk step length
  double turns = 3.0;   // spiral
  std::uint64_t seed = 1;
  std::string path;     // custom_file

  std::string id() const {
    std::string s = std::string(to_string(kind)) + "_" + std::to_string(size);
    if (kind == DatasetKind::custom_file) s = "custom_" + path;
    return s;
  }
};

struct Dataset {
  std::string id;
  PointSet points;
  std::optional<PolylineCurve> curve;
};

namespace detail {

inline PointSet pad(const PointSet& s, std::size_t dim) {
  if (dim == 0 || dim == s.dim()) return s;
  if (dim < s.dim()) throw invalid_input("requested dimension below the dataset's natural one");
  PointSet out(dim);
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<double> p(dim, 0.0);
    std::copy(s[i].begin(), s[i].end(), p.begin());
    out.push_back(Point(std::move(p)));
  }
  return out;
}

inline PointSet koch_vertices(int k) {
  std::vector<std::array<double, 2>> pts{{0.0, 0.0}, {1.0, 0.0}};
  const double c = 0.5, s = std::numbers::sqrt3 / 2.0;
  for (int it = 0; it < k; ++it) {
    std::vector<std::array<double, 2>> next;
    next.reserve(4 * pts.size());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      auto a = pts[i], b = pts[i + 1];
      double dx = (b[0] - a[0]) / 3.0, dy = (b[1] - a[1]) / 3.0;
      std::array<double, 2> p1{a[0] + dx, a[1] + dy}, p3{a[0] + 2 * dx, a[1] + 2 * dy};
      std::array<double, 2> p2{p1[0] + c * dx - s * dy, p1[1] + s * dx + c * dy};
      next.insert(next.end(), {a, p1, p2, p3});
    }
    next.push_back(pts.back());
    pts = std::move(next);
  }
  PointSet out(2);
  for (auto& p : pts) out.push_back(Point{p[0], p[1]});
  return out;
}

}  // namespace detail

inline Dataset generate(const DatasetSpec& spec) {
  Dataset ds{spec.id(), {}, std::nullopt};
  std::mt19937_64 rng(spec.seed);
  switch (spec.kind) {
    case DatasetKind::koch: {
      if (spec.size < 0 || spec.size > 9) throw invalid_input("koch iteration must be in [0, 9]");
      auto v = detail::pad(detail::koch_vertices(spec.size), spec.dim);
      ds.curve = PolylineCurve(v);
      ds.points = std::move(v);
      break;
    }
    case DatasetKind::circle: {
      if (spec.size < 3) throw invalid_input("circle needs at least 3 points");
      PointSet v(2);
      for (int i = 0; i < spec.size; ++i) {
        double th = 2.0 * std::numbers::pi * i / spec.size;
        v.push_back(Point{std::cos(th), std::sin(th)});
      }
      ds.points = detail::pad(v, spec.dim);
      PointSet closed = ds.points;
      closed.push_back(ds.points[0]);
      ds.curve = PolylineCurve(std::move(closed));
      break;
    }
    case DatasetKind::spiral: {
      if (spec.size < 2) throw invalid_input("spiral needs at least 2 points");
      PointSet v(2);
      for (int i = 0; i < spec.size; ++i) {
        double t = static_cast<double>(i) / (spec.size - 1);
        double r = 0.1 + 0.9 * t, th = 2.0 * std::numbers::pi * spec.turns * t;
        v.push_back(Point{r * std::cos(th), r * std::sin(th)});
      }
      ds.points = detail::pad(v, spec.dim);
      ds.curve = PolylineCurve(ds.points);
      break;
    }
    case DatasetKind::cantor4: {
      if (spec.size < 0 || spec.size > 16) throw invalid_input("cantor4 iteration must be in [0, 16]");
      std::vector<std::pair<double, double>> iv{{0.0, 1.0}};
      for (int it = 0; it < spec.size; ++it) {
        std::vector<std::pair<double, double>> next;
        for (auto [a, b] : iv) {
          double q = (b - a) / 4.0;
          next.push_back({a, a + q});
          next.push_back({b - q, b});
        }
        iv = std::move(next);
      }
      PointSet v(1);
      for (auto [a, b] : iv) {
        v.push_back(Point{a});
        v.push_back(Point{b});
      }
      ds.points = detail::pad(v, spec.dim);
      break;
    }
    case DatasetKind::random_walk: {
      if (spec.size < 2 || !(spec.step > 0)) throw invalid_input("random_walk needs >= 2 points and step > 0");
      const std::size_t dim = spec.dim == 0 ? 3 : spec.dim;
      std::normal_distribution<double> g(0.0, 1.0);
      PointSet v(dim);
      std::vector<double> p(dim, 0.0);
      v.push_back(Point(p));
      for (int i = 1; i < spec.size; ++i) {
        std::vector<double> dir(dim);
        for (double& x : dir) x = g(rng);
        dir = detail::normalized(std::move(dir));
        for (std::size_t c = 0; c < dim; ++c) p[c] += spec.step * dir[c];
        v.push_back(Point(p));
      }
      ds.points = v;
      ds.curve = PolylineCurve(std::move(v));
      break;
    }
    case DatasetKind::uniform_square: {
      if (spec.size < 1) throw invalid_input("uniform_square needs at least 1 point");
      std::uniform_real_distribution<double> u(0.0, 1.0);
      PointSet v(2);
      for (int i = 0; i < spec.size; ++i) {
        double x = u(rng);
        double y = u(rng);
        v.push_back(Point{x, y});
      }
      ds.points = detail::pad(v, spec.dim);
      break;
    }
    case DatasetKind::collinear: {
      if (spec.size < 2) throw invalid_input("collinear needs at least 2 points");
      PointSet v(2);
      for (int i = 0; i < spec.size; ++i) v.push_back(Point{static_cast<double>(i) / (spec.size - 1), 0.0});
      ds.points = detail::pad(v, spec.dim);
      ds.curve = PolylineCurve(ds.points);
      break;
    }
    case DatasetKind::custom_file: {
      ds.points = read_points_csv(spec.path);
      if (spec.dim) ds.points = detail::pad(ds.points, spec.dim);
      break;
    }
  }
  return ds;
}

/// x -> Q x + t with Q a D×d matrix with orthonormal columns (thin QR of a
/// seeded Gaussian matrix) and t a seeded Gaussian translation.
class IsometricMap {
 public:
  IsometricMap(std::size_t from, std::size_t to, std::uint64_t seed) : from_(from), to_(to) {
    if (from == 0) throw invalid_input("source dimension must be >= 1");
    if (to < from) throw invalid_input("target dimension below the source dimension");
    if (to == from && seed == 0) {
      q_ = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from));
      t_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(to));
      return;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from));
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = g(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    q_ = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
    t_.resize(m.rows());
    for (Eigen::Index i = 0; i < t_.size(); ++i) t_(i) = g(rng);
  }

  Point apply(Coords p) const {
    if (p.size() != from_) throw invalid_input("dimension mismatch in isometric map");
    Eigen::Map<const Eigen::VectorXd> x(p.data(), static_cast<Eigen::Index>(p.size()));
    Eigen::VectorXd y = q_ * x + t_;
    return Point(std::vector<double>(y.data(), y.data() + y.size()));
  }

  PointSet apply(const PointSet& s) const {
    PointSet out(to_);
    for (std::size_t i = 0; i < s.size(); ++i) out.push_back(apply(s[i]));
    return out;
  }

  PolylineCurve apply(const PolylineCurve& c) const { return PolylineCurve(apply(c.vertices())); }

 private:
  std::size_t from_, to_;
  Eigen::MatrixXd q_;
  Eigen::VectorXd t_;
};

/// Image of K under a seeded random isometry R^d -> R^D. With D = d and
/// seed 0 the map is the identity.
inline PointSet embed_isometric(const PointSet& k, std::size_t D, std::uint64_t seed) {
  if (k.empty()) throw invalid_input("embedding an empty set");
  return IsometricMap(k.dim(), D, seed).apply(k);
}

inline Dataset embed_isometric(const Dataset& ds, std::size_t D, std::uint64_t seed) {
  IsometricMap m(ds.points.dim(), D, seed);
  Dataset out{ds.id, m.apply(ds.points), std::nullopt};
  if (ds.curve) out.curve = m.apply(*ds.curve);
  return out;
}

}  // namespace atsp
