#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "atsp/geometry.hpp"

namespace atsp {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double length = 0.0;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

/// Undirected graph embedded in R^D; edge lengths are the Euclidean
/// distances of their endpoints.
class GeometricGraph {
 public:
  GeometricGraph() = default;
  explicit GeometricGraph(PointSet vertices) : vertices_(std::move(vertices)) {}

  const PointSet& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }

  std::size_t add_vertex(Coords p) {
    vertices_.push_back(p);
    return vertices_.size() - 1;
  }

  /// Adds [u, v] and returns its length.
  double add_edge(std::size_t u, std::size_t v) {
    if (u == v) throw invalid_input("self-loop");
    if (u >= vertex_count() || v >= vertex_count()) throw invalid_input("edge endpoint out of range");
    double len = distance(vertices_[u], vertices_[v]);
    edges_.push_back(Edge{u, v, len});
    return len;
  }

  std::size_t find_edge(std::size_t u, std::size_t v) const {
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if ((edges_[i].u == u && edges_[i].v == v) || (edges_[i].u == v && edges_[i].v == u)) return i;
    return npos;
  }
  bool has_edge(std::size_t u, std::size_t v) const { return find_edge(u, v) != npos; }

  /// Removes edge number `i` and returns its length.
  double remove_edge_at(std::size_t i) {
    double len = edges_.at(i).length;
    edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(i));
    return len;
  }

  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(vertex_count());
    for (const auto& e : edges_) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
  }

 private:
  PointSet vertices_;
  std::vector<Edge> edges_;
};

inline double total_length(const GeometricGraph& g) {
  double s = 0.0;
  for (const auto& e : g.edges()) s += e.length;
  return s;
}

/// True when the vertices in `among` (all vertices when empty) lie in one
/// component.
inline bool is_connected(const GeometricGraph& g, std::span<const std::size_t> among = {}) {
  if (g.vertex_count() == 0) return true;
  UnionFind uf(g.vertex_count());
  for (const auto& e : g.edges()) uf.unite(e.u, e.v);
  if (among.empty()) {
    auto r = uf.find(0);
    for (std::size_t i = 1; i < g.vertex_count(); ++i)
      if (uf.find(i) != r) return false;
    return true;
  }
  auto r = uf.find(among[0]);
  return std::all_of(among.begin(), among.end(), [&](std::size_t i) { return uf.find(i) == r; });
}

}  // namespace atsp
