#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mint/error.hpp"

namespace mint {

using Weight = std::int64_t;
using VertexId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Weight weight = 1;
  Weight cost = 1;

  bool is_loop() const noexcept { return u == v; }
  bool touches(VertexId x) const noexcept { return u == x || v == x; }
  VertexId other(VertexId x) const noexcept { return u == x ? v : u; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected multigraph with integer edge weights and interdiction costs.
///
/// Edge identity is positional: the i-th edge keeps index i for the lifetime of
/// the graph, so parallel edges stay distinguishable. Loops are allowed but never
/// take part in a matching.
class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t vertex_count, const std::vector<Edge>& edges = {})
      : vertex_count_(vertex_count) {
    edges_.reserve(edges.size());
    for (const Edge& e : edges) add_edge(e.u, e.v, e.weight, e.cost);
  }

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  const Edge& edge(EdgeId id) const {
    if (id >= edges_.size()) throw InputError("edge index " + std::to_string(id) + " out of range");
    return edges_[id];
  }

  VertexId add_vertex() { return vertex_count_++; }

  EdgeId add_edge(VertexId u, VertexId v, Weight weight = 1, Weight cost = 1) {
    check_vertex(u);
    check_vertex(v);
    if (weight < 0 || cost < 0) throw InputError("edge weight and cost must be non-negative");
    Weight tw = 0;
    Weight tc = 0;
    if (__builtin_add_overflow(total_weight_, weight, &tw) ||
        __builtin_add_overflow(total_cost_, cost, &tc))
      throw InputError("total edge weight or cost overflows 64-bit arithmetic");
    total_weight_ = tw;
    total_cost_ = tc;
    edges_.push_back(Edge{u, v, weight, cost});
    return edges_.size() - 1;
  }

  Weight total_weight() const noexcept { return total_weight_; }
  Weight total_cost() const noexcept { return total_cost_; }

  void check_vertex(VertexId v) const {
    if (v >= vertex_count_)
      throw InputError("vertex index " + std::to_string(v) + " out of range [0, " +
                       std::to_string(vertex_count_) + ")");
  }

  /// No loops and no parallel edges.
  bool is_simple() const {
    std::vector<std::pair<VertexId, VertexId>> pairs;
    pairs.reserve(edges_.size());
    for (const Edge& e : edges_) {
      if (e.is_loop()) return false;
      pairs.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    }
    std::sort(pairs.begin(), pairs.end());
    return std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end();
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  Weight total_weight_ = 0;
  Weight total_cost_ = 0;
};

/// A set of edge indices into a parent graph, kept sorted ascending.
struct Matching {
  std::vector<EdgeId> edges;

  friend bool operator==(const Matching&, const Matching&) = default;
};

struct InducedSubgraph {
  Graph graph;
  std::vector<VertexId> kept_vertices;  // new index -> old index, ascending
  std::vector<EdgeId> kept_edges;       // new edge index -> old edge index
};

/// G[V']: retained vertices are renumbered in ascending order of their old index.
inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const VertexId> keep) {
  std::vector<std::optional<VertexId>> remap(g.vertex_count());
  for (VertexId v : keep) {
    g.check_vertex(v);
    remap[v] = 0;
  }
  InducedSubgraph out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!remap[v]) continue;
    remap[v] = out.kept_vertices.size();
    out.kept_vertices.push_back(v);
  }
  out.graph = Graph(out.kept_vertices.size());
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edges()[id];
    if (!remap[e.u] || !remap[e.v]) continue;
    out.graph.add_edge(*remap[e.u], *remap[e.v], e.weight, e.cost);
    out.kept_edges.push_back(id);
  }
  return out;
}

struct EdgeRemoval {
  Graph graph;
  std::vector<std::optional<EdgeId>> edge_map;  // old edge index -> new edge index
};

/// G - E': same vertex set, surviving edges keep their relative order.
inline EdgeRemoval remove_edges(const Graph& g, std::span<const EdgeId> removed) {
  std::vector<bool> gone(g.edge_count(), false);
  for (EdgeId id : removed) {
    if (id >= g.edge_count()) throw InputError("edge index " + std::to_string(id) + " out of range");
    gone[id] = true;
  }
  EdgeRemoval out{Graph(g.vertex_count()), std::vector<std::optional<EdgeId>>(g.edge_count())};
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    if (gone[id]) continue;
    const Edge& e = g.edges()[id];
    out.edge_map[id] = out.graph.add_edge(e.u, e.v, e.weight, e.cost);
  }
  return out;
}

/// Number of incident edges; a loop counts once.
inline std::size_t degree(const Graph& g, VertexId v) {
  g.check_vertex(v);
  return static_cast<std::size_t>(
      std::count_if(g.edges().begin(), g.edges().end(), [v](const Edge& e) { return e.touches(v); }));
}

/// Disjoint union; vertices of `b` are shifted by a.vertex_count().
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph out(a.vertex_count() + b.vertex_count(), a.edges());
  const std::size_t shift = a.vertex_count();
  for (const Edge& e : b.edges()) out.add_edge(e.u + shift, e.v + shift, e.weight, e.cost);
  return out;
}

inline bool is_matching(const Graph& g, std::span<const EdgeId> edges) {
  std::vector<bool> used(g.vertex_count(), false);
  std::vector<bool> seen(g.edge_count(), false);
  for (EdgeId id : edges) {
    if (id >= g.edge_count() || seen[id]) return false;
    seen[id] = true;
    const Edge& e = g.edges()[id];
    if (e.is_loop() || used[e.u] || used[e.v]) return false;
    used[e.u] = used[e.v] = true;
  }
  return true;
}

inline Weight total_weight(const Graph& g, std::span<const EdgeId> edges) {
  Weight sum = 0;
  for (EdgeId id : edges) sum += g.edge(id).weight;
  return sum;
}

inline Weight total_cost(const Graph& g, std::span<const EdgeId> edges) {
  Weight sum = 0;
  for (EdgeId id : edges) sum += g.edge(id).cost;
  return sum;
}

/// BFS 2-colouring; loops make a graph non-bipartite.
inline std::optional<std::vector<int>> two_coloring(const Graph& g) {
  std::vector<std::vector<VertexId>> adj(g.vertex_count());
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) return std::nullopt;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<int> color(g.vertex_count(), -1);
  std::vector<VertexId> queue;
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      VertexId x = queue[head];
      for (VertexId y : adj[x]) {
        if (color[y] == -1) {
          color[y] = 1 - color[x];
          queue.push_back(y);
        } else if (color[y] == color[x]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

inline bool is_bipartite(const Graph& g) { return two_coloring(g).has_value(); }

}  // namespace mint
