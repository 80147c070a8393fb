#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "mint/graph.hpp"
#include "mint/interdiction.hpp"
#include "mint/reductions.hpp"
#include "mint/treedecomp.hpp"

namespace mint::gen {

/// Uniform weight/cost in [1, max_value] unless unit.
struct WeightSpec {
  bool unit = true;
  Weight max_value = 4;
};

namespace detail {

inline Weight draw(std::mt19937_64& rng, const WeightSpec& spec) {
  if (spec.unit) return 1;
  return std::uniform_int_distribution<Weight>(1, spec.max_value)(rng);
}

inline void add(Graph& g, VertexId u, VertexId v, std::mt19937_64& rng, const WeightSpec& spec) {
  Weight w = draw(rng, spec);
  Weight c = draw(rng, spec);
  g.add_edge(u, v, w, c);
}

}  // namespace detail

/// P_n: vertices 0..n-1, edges i-(i+1).
inline Graph path(std::size_t n, std::mt19937_64& rng, const WeightSpec& spec = {}) {
  Graph g(n);
  for (VertexId i = 0; i + 1 < n; ++i) detail::add(g, i, i + 1, rng, spec);
  return g;
}

inline Graph path(std::size_t n) {
  std::mt19937_64 rng(0);
  return path(n, rng);
}

/// C_n for n >= 3.
inline Graph cycle(std::size_t n, std::mt19937_64& rng, const WeightSpec& spec = {}) {
  if (n < 3) throw InputError("a cycle needs at least 3 vertices");
  Graph g = path(n, rng, spec);
  detail::add(g, n - 1, 0, rng, spec);
  return g;
}

/// Random k-tree on n >= k+1 vertices: a (k+1)-clique, then each new vertex is
/// joined to a uniformly chosen existing k-clique.
inline Graph ktree(std::size_t k, std::size_t n, std::mt19937_64& rng, const WeightSpec& spec = {}) {
  if (k < 1 || n < k + 1) throw InputError("k-tree needs k >= 1 and n >= k + 1");
  Graph g(n);
  for (VertexId a = 0; a <= k; ++a)
    for (VertexId b = a + 1; b <= k; ++b) detail::add(g, a, b, rng, spec);
  std::vector<std::vector<VertexId>> cliques;
  for (VertexId skip = 0; skip <= k; ++skip) {
    std::vector<VertexId> c;
    for (VertexId a = 0; a <= k; ++a)
      if (a != skip) c.push_back(a);
    cliques.push_back(std::move(c));
  }
  for (VertexId v = k + 1; v < n; ++v) {
    const auto pick = std::uniform_int_distribution<std::size_t>(0, cliques.size() - 1)(rng);
    const std::vector<VertexId> base = cliques[pick];
    for (VertexId u : base) detail::add(g, u, v, rng, spec);
    for (std::size_t drop = 0; drop < base.size(); ++drop) {
      std::vector<VertexId> c = base;
      c[drop] = v;
      std::sort(c.begin(), c.end());
      cliques.push_back(std::move(c));
    }
  }
  return g;
}

/// Random multigraph-free simple graph with n vertices and m distinct edges.
inline Graph random_simple(std::size_t n, std::size_t m, std::mt19937_64& rng, const WeightSpec& spec = {}) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  if (m > pairs.size()) throw InputError("too many edges for a simple graph on " + std::to_string(n) + " vertices");
  std::shuffle(pairs.begin(), pairs.end(), rng);
  pairs.resize(m);
  std::sort(pairs.begin(), pairs.end());
  Graph g(n);
  for (auto [a, b] : pairs) detail::add(g, a, b, rng, spec);
  return g;
}

/// Isolated edges with explicit (cost = size, weight = value) pairs.
inline Graph isolated(const std::vector<KnapsackItem>& items) {
  Graph g(2 * items.size());
  for (std::size_t i = 0; i < items.size(); ++i) g.add_edge(2 * i, 2 * i + 1, items[i].value, items[i].size);
  return g;
}

/// Width-1 path decomposition of P_n: bags {i, i+1} chained, rooted at bag 0.
inline TreeDecomposition path_decomposition(std::size_t n) {
  TreeDecomposition td;
  if (n == 0) return td;
  if (n == 1) {
    td.bags.push_back({0});
    return td;
  }
  for (VertexId i = 0; i + 1 < n; ++i) td.bags.push_back({i, i + 1});
  for (NodeId i = 0; i + 1 < td.bags.size(); ++i) td.tree_edges.emplace_back(i, i + 1);
  return td;
}

}  // namespace mint::gen
