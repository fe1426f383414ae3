#pragma once

// Exact Euclidean minimum spanning tree and the doubled-edge tour that turns
// any connected graph into a closed Lipschitz curve.

#include <limits>
#include <vector>

#include "atsp/graph.hpp"
#include "atsp/polyline.hpp"

namespace atsp {

/// Prim's algorithm on the complete graph, O(n^2) time and O(n) extra
/// memory. Ties on key go to the lowest vertex index.
inline GeometricGraph mst(const PointSet& k) {
  if (k.empty()) throw invalid_input("mst of an empty set");
  GeometricGraph t(k);
  const std::size_t n = k.size();
  std::vector<double> key(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> parent(n, npos);
  std::vector<char> done(n, 0);
  key[0] = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = npos;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && (u == npos || key[i] < key[u])) u = i;
    done[u] = 1;
    if (parent[u] != npos) t.add_edge(parent[u], u);
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v]) continue;
      double d = distance(k[u], k[v]);
      if (d < key[v]) {
        key[v] = d;
        parent[v] = u;
      }
    }
  }
  return t;
}

/// Closed walk that traverses every edge exactly twice, once in each
/// direction (depth-first, neighbours in index order, starting at vertex 0).
/// Returns the visited vertex indices; first and last entries coincide.
inline std::vector<std::size_t> euler_tour(const GeometricGraph& g) {
  if (g.vertex_count() == 0) return {};
  if (!is_connected(g)) throw invalid_input("euler tour of a disconnected graph");
  const auto& edges = g.edges();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(g.vertex_count());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adj[edges[i].u].push_back({edges[i].v, i});
    adj[edges[i].v].push_back({edges[i].u, i});
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  std::vector<std::size_t> walk{0};
  std::vector<char> seen(g.vertex_count(), 0), used(edges.size(), 0);
  struct Frame {
    std::size_t v;
    std::size_t next;
  };
  std::vector<Frame> stack{{0, 0}};
  seen[0] = 1;
  while (!stack.empty()) {
    auto& fr = stack.back();
    if (fr.next == adj[fr.v].size()) {
      stack.pop_back();
      if (!stack.empty()) walk.push_back(stack.back().v);
      continue;
    }
    auto [w, ei] = adj[fr.v][fr.next++];
    if (used[ei]) continue;
    used[ei] = 1;
    walk.push_back(w);
    if (seen[w]) {
      // Non-tree edge: go there and come straight back.
      walk.push_back(fr.v);
    } else {
      seen[w] = 1;
      stack.push_back({w, 0});
    }
  }
  return walk;
}

/// The tour as an arclength-parametrised polyline; its length is twice the
/// graph's length and its image is the union of the edges.
inline PolylineCurve euler_parametrization(const GeometricGraph& g) {
  auto walk = euler_tour(g);
  return PolylineCurve(g.vertices().subset(walk));
}

}  // namespace atsp
