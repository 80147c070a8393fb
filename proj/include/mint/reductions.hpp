#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mint/graph.hpp"
#include "mint/interdiction.hpp"
#include "mint/matching.hpp"
#include "mint/treedecomp.hpp"

namespace mint {

// ---------------------------------------------------------------------------
// Knapsack -> MINT on a graph of isolated edges.

struct KnapsackItem {
  Weight size = 0;
  Weight value = 0;
};

struct KnapsackInstance {
  std::vector<KnapsackItem> items;
  Weight capacity = 0;  // Z
  Weight target = 0;    // K
};

/// Is there a subset with total size <= capacity and total value >= target?
/// Plain 0/1 knapsack DP over capacities.
inline bool knapsack_decide(const KnapsackInstance& k) {
  if (k.capacity < 0) return false;
  Weight total_size = 0;
  for (const auto& it : k.items) {
    if (it.size < 0 || it.value < 0) throw InputError("knapsack sizes and values must be non-negative");
    total_size += it.size;
  }
  const auto cap = static_cast<std::size_t>(std::min(k.capacity, total_size));
  std::vector<Weight> best(cap + 1, 0);
  for (const auto& it : k.items) {
    const auto s = static_cast<std::size_t>(it.size);
    if (s > cap) continue;
    for (std::size_t c = cap + 1; c-- > s;) best[c] = std::max(best[c], best[c - s] + it.value);
  }
  return best[cap] >= k.target;
}

struct KnapsackReduction {
  Instance instance;
  Weight threshold = 0;  // sum of values minus the knapsack target
};

/// Edge i = {2i, 2i+1} with weight v(i) and cost s(i); budget = capacity.
/// The knapsack is feasible iff nu_B <= threshold.
inline KnapsackReduction knapsack_to_mint(const KnapsackInstance& k) {
  Graph g(2 * k.items.size());
  for (std::size_t i = 0; i < k.items.size(); ++i) {
    if (k.items[i].size < 0 || k.items[i].value < 0)
      throw InputError("knapsack sizes and values must be non-negative");
    g.add_edge(2 * i, 2 * i + 1, k.items[i].value, k.items[i].size);
  }
  if (k.capacity < 0) throw InputError("knapsack capacity must be non-negative");
  Weight threshold = 0;
  if (__builtin_sub_overflow(g.total_weight(), k.target, &threshold))
    throw InputError("knapsack target overflows 64-bit arithmetic");
  return {Instance(std::move(g), k.capacity), threshold};
}

// ---------------------------------------------------------------------------
// m-gadgets: complete bipartite X x Y with |X| = |Y| = m + 1, endpoint u joined
// to all of X and endpoint v joined to all of Y.

struct Gadget {
  VertexId u = 0;
  VertexId v = 0;
  std::vector<VertexId> x_side;
  std::vector<VertexId> y_side;
  std::vector<EdgeId> edges;  // u-X first, then v-Y, then X x Y row by row
};

/// Appends an m-gadget between existing vertices u and v (unit weights/costs).
inline Gadget add_gadget(Graph& g, VertexId u, VertexId v, std::size_t m) {
  if (m < 1) throw InputError("gadget size must be at least 1");
  g.check_vertex(u);
  g.check_vertex(v);
  Gadget out{u, v, {}, {}, {}};
  for (std::size_t i = 0; i <= m; ++i) out.x_side.push_back(g.add_vertex());
  for (std::size_t i = 0; i <= m; ++i) out.y_side.push_back(g.add_vertex());
  for (VertexId x : out.x_side) out.edges.push_back(g.add_edge(u, x));
  for (VertexId y : out.y_side) out.edges.push_back(g.add_edge(v, y));
  for (VertexId x : out.x_side)
    for (VertexId y : out.y_side) out.edges.push_back(g.add_edge(x, y));
  return out;
}

/// Stand-alone m-gadget: u = 0, v = 1, X = 2..m+2, Y = m+3..2m+3.
inline Graph build_gadget(std::size_t m) {
  Graph g(2);
  add_gadget(g, 0, 1, m);
  return g;
}

inline Gadget gadget_layout(std::size_t m) {
  Graph g(2);
  return add_gadget(g, 0, 1, m);
}

/// m+1 pairwise disjoint matchings of size m+1 inside X x Y (saturating neither
/// endpoint): the cyclic shifts x_i - y_{i+s}.
inline std::vector<Matching> gadget_non_saturating_matchings(const Gadget& gad) {
  const std::size_t t = gad.x_side.size();
  const std::size_t core = 2 * t;  // X x Y edges start after the two stars
  std::vector<Matching> out(t);
  for (std::size_t s = 0; s < t; ++s) {
    for (std::size_t i = 0; i < t; ++i) out[s].edges.push_back(gad.edges[core + i * t + (i + s) % t]);
    std::sort(out[s].edges.begin(), out[s].edges.end());
  }
  return out;
}

/// m+1 pairwise edge-disjoint perfect matchings of the gadget, found by
/// backtracking: matching s uses u-x_s and v-y_s, and a bijection between the
/// remaining X and Y vertices that avoids every X x Y edge already used.
inline std::vector<Matching> gadget_perfect_matchings(const Gadget& gad) {
  const std::size_t t = gad.x_side.size();
  const std::size_t core = 2 * t;
  std::vector<std::vector<bool>> used(t, std::vector<bool>(t, false));
  std::vector<std::vector<std::size_t>> partner(t, std::vector<std::size_t>(t, t));

  // Fill matching s, row i; returns true once all rows of all matchings are placed.
  auto place = [&](auto&& self, std::size_t s, std::size_t i, std::vector<bool>& col_taken) -> bool {
    if (s == t) return true;
    if (i == t) {
      std::vector<bool> fresh(t, false);
      fresh[(s + 1) % t] = true;
      return self(self, s + 1, 0, fresh);
    }
    if (i == s) return self(self, s, i + 1, col_taken);
    for (std::size_t j = 0; j < t; ++j) {
      if (col_taken[j] || used[i][j]) continue;
      used[i][j] = true;
      col_taken[j] = true;
      partner[s][i] = j;
      if (self(self, s, i + 1, col_taken)) return true;
      used[i][j] = false;
      col_taken[j] = false;
    }
    return false;
  };
  std::vector<bool> first(t, false);
  first[0] = true;
  if (!place(place, 0, 0, first)) throw InternalError("no disjoint perfect matchings found");

  std::vector<Matching> out(t);
  for (std::size_t s = 0; s < t; ++s) {
    out[s].edges.push_back(gad.edges[s]);      // u - x_s
    out[s].edges.push_back(gad.edges[t + s]);  // v - y_s
    for (std::size_t i = 0; i < t; ++i)
      if (i != s) out[s].edges.push_back(gad.edges[core + i * t + partner[s][i]]);
    std::sort(out[s].edges.begin(), out[s].edges.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// NMINTU -> MINTU: every non-removable edge becomes an |E|-gadget.

struct NmintuReduction {
  Instance instance;  // unit weights and costs, no non-removable edges
  Weight offset = 0;  // |N| (|E| + 1)
  std::vector<Gadget> gadgets;
  std::vector<std::string> vertex_names;
};

inline NmintuReduction nmintu_to_mintu(const Instance& inst) {
  const Graph& g = inst.graph();
  if (!g.is_simple()) throw InputError("NMINTU reduction needs a simple graph");
  for (const Edge& e : g.edges())
    if (e.weight != 1 || e.cost != 1) throw InputError("NMINTU reduction needs unit weights and costs");

  const std::size_t m = g.edge_count();
  Graph out(g.vertex_count());
  for (EdgeId id = 0; id < m; ++id)
    if (inst.is_removable(id)) out.add_edge(g.edges()[id].u, g.edges()[id].v);

  NmintuReduction red;
  for (VertexId v = 0; v < g.vertex_count(); ++v) red.vertex_names.push_back("v" + std::to_string(v));
  for (EdgeId id : inst.non_removable()) {
    Gadget gad = add_gadget(out, g.edges()[id].u, g.edges()[id].v, m);
    const std::string tag = "g" + std::to_string(red.gadgets.size());
    for (std::size_t k = 0; k < gad.x_side.size(); ++k) red.vertex_names.push_back(tag + "_x" + std::to_string(k));
    for (std::size_t k = 0; k < gad.y_side.size(); ++k) red.vertex_names.push_back(tag + "_y" + std::to_string(k));
    red.gadgets.push_back(std::move(gad));
  }
  red.offset = static_cast<Weight>(inst.non_removable().size()) * static_cast<Weight>(m + 1);
  red.instance = Instance(std::move(out), inst.budget());
  return red;
}

/// Extends a tree decomposition of the original graph to the expanded one.
/// Each gadget gets a hub bag {u, v} u X hung below a base bag holding u and v,
/// and one leaf bag X u {v, y} per Y vertex below the hub, so the width is at
/// most max(width(base), m + 2).
inline TreeDecomposition expanded_decomposition(const NmintuReduction& red, const TreeDecomposition& base) {
  TreeDecomposition td = base;
  for (const Gadget& gad : red.gadgets) {
    NodeId host = td.bags.size();
    for (NodeId i = 0; i < base.bags.size(); ++i) {
      const auto& bag = base.bags[i];
      if (std::find(bag.begin(), bag.end(), gad.u) != bag.end() &&
          std::find(bag.begin(), bag.end(), gad.v) != bag.end()) {
        host = i;
        break;
      }
    }
    if (host == td.bags.size()) throw InputError("base decomposition has no bag holding both gadget endpoints");
    std::vector<VertexId> hub = gad.x_side;
    hub.push_back(gad.u);
    hub.push_back(gad.v);
    std::sort(hub.begin(), hub.end());
    td.bags.push_back(hub);
    const NodeId hub_id = td.bags.size() - 1;
    td.tree_edges.emplace_back(host, hub_id);
    for (VertexId y : gad.y_side) {
      std::vector<VertexId> leaf = gad.x_side;
      leaf.push_back(gad.v);
      leaf.push_back(y);
      std::sort(leaf.begin(), leaf.end());
      td.bags.push_back(std::move(leaf));
      td.tree_edges.emplace_back(hub_id, td.bags.size() - 1);
    }
  }
  return td;
}

// ---------------------------------------------------------------------------
// CLIQUE -> NMINTU on a simple bipartite graph.

struct CliqueInstance {
  Graph graph;  // simple
  std::size_t r = 1;
};

struct CliqueReduction {
  Instance instance;     // budget C(r, 2), non-removable star edges
  Weight threshold = 0;  // |F| - r (r - 3) / 2
  std::vector<std::string> vertex_names;
};

/// Vertex v_i keeps index i. For the k-th edge {i, j} of H (i < j) the
/// vertices v_ij = |I| + 2k and vbar_ij = |I| + 2k + 1 are added together with
/// the edges {v_ij, vbar_ij}, {v_i, v_ij}, {v_j, v_ij}; the two star edges are
/// non-removable.
inline CliqueReduction clique_to_nmintu(const CliqueInstance& ci) {
  const Graph& h = ci.graph;
  if (!h.is_simple()) throw InputError("clique reduction needs a simple graph");
  if (ci.r < 1) throw InputError("clique size must be at least 1");

  const std::size_t n = h.vertex_count();
  Graph g(n + 2 * h.edge_count());
  std::vector<EdgeId> fixed;
  CliqueReduction red;
  for (VertexId v = 0; v < n; ++v) red.vertex_names.push_back("v" + std::to_string(v));
  for (std::size_t k = 0; k < h.edge_count(); ++k) {
    VertexId i = std::min(h.edges()[k].u, h.edges()[k].v);
    VertexId j = std::max(h.edges()[k].u, h.edges()[k].v);
    const VertexId mid = n + 2 * k;
    const VertexId tip = mid + 1;
    g.add_edge(mid, tip);
    fixed.push_back(g.add_edge(i, mid));
    fixed.push_back(g.add_edge(j, mid));
    red.vertex_names.push_back("v" + std::to_string(i) + "_" + std::to_string(j));
    red.vertex_names.push_back("vbar" + std::to_string(i) + "_" + std::to_string(j));
  }
  const auto r = static_cast<Weight>(ci.r);
  red.threshold = static_cast<Weight>(h.edge_count()) - r * (r - 3) / 2;
  red.instance = Instance(std::move(g), r * (r - 1) / 2, std::move(fixed));
  return red;
}

struct CliqueOptions {
  std::size_t max_vertices = 10;
};

/// Exhaustive check for r pairwise adjacent vertices.
inline bool has_clique(const Graph& g, std::size_t r, const CliqueOptions& opts = {}) {
  const std::size_t n = g.vertex_count();
  if (n > opts.max_vertices) throw SizeError("clique search limited to " + std::to_string(opts.max_vertices) + " vertices");
  if (r == 0) return true;
  if (r > n) return false;
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const Edge& e : g.edges())
    if (!e.is_loop()) adj[e.u][e.v] = adj[e.v][e.u] = true;
  std::vector<VertexId> pick;
  auto grow = [&](auto&& self, VertexId from) -> bool {
    if (pick.size() == r) return true;
    for (VertexId v = from; v < n; ++v) {
      if (!std::all_of(pick.begin(), pick.end(), [&](VertexId p) { return adj[p][v]; })) continue;
      pick.push_back(v);
      if (self(self, v + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return grow(grow, 0);
}

// ---------------------------------------------------------------------------
// Bipartite matching lower bound used by the clique reduction.

struct BipartiteGraph {
  Graph graph;
  std::vector<VertexId> x_side;
  std::vector<VertexId> y_side;
};

struct Lemma1Report {
  bool conditions_met = false;
  Weight nu = 0;
  bool claim_holds = true;
};

/// Evaluates the hypotheses (k >= 4, |X| > k, |Y| = C(k,2), d(y) = 2 for all
/// y, d(x) >= 1 for all x, simple, no C4) and the conclusion nu >= k + 1.
inline Lemma1Report check_lemma1(const BipartiteGraph& bg, std::size_t k) {
  const Graph& g = bg.graph;
  std::vector<int> side(g.vertex_count(), -1);
  for (VertexId x : bg.x_side) {
    g.check_vertex(x);
    if (side[x] != -1) throw InputError("vertex listed twice in the bipartition");
    side[x] = 0;
  }
  for (VertexId y : bg.y_side) {
    g.check_vertex(y);
    if (side[y] != -1) throw InputError("vertex listed twice in the bipartition");
    side[y] = 1;
  }
  if (std::find(side.begin(), side.end(), -1) != side.end()) throw InputError("bipartition misses a vertex");
  for (const Edge& e : g.edges())
    if (side[e.u] == side[e.v]) throw InputError("edge inside one side of the bipartition");

  Lemma1Report rep;
  rep.nu = matching_value(unit_instance(g, 0).graph());

  bool ok = k >= 4 && bg.x_side.size() > k && bg.y_side.size() == k * (k - 1) / 2 && g.is_simple();
  if (ok) {
    for (VertexId y : bg.y_side) ok = ok && degree(g, y) == 2;
    for (VertexId x : bg.x_side) ok = ok && degree(g, x) >= 1;
  }
  if (ok) {
    // With d(y) = 2, a C4 exists iff two Y vertices share both neighbours.
    std::vector<std::pair<VertexId, VertexId>> nbrs;
    for (VertexId y : bg.y_side) {
      std::vector<VertexId> n;
      for (const Edge& e : g.edges())
        if (e.touches(y)) n.push_back(e.other(y));
      nbrs.emplace_back(std::min(n[0], n[1]), std::max(n[0], n[1]));
    }
    std::sort(nbrs.begin(), nbrs.end());
    ok = std::adjacent_find(nbrs.begin(), nbrs.end()) == nbrs.end();
  }
  rep.conditions_met = ok;
  rep.claim_holds = !ok || rep.nu >= static_cast<Weight>(k) + 1;
  return rep;
}

/// Random graph meeting the hypotheses above: |X| drawn from [k+1, min(k(k-1), k+4)],
/// Y = C(k,2) distinct pairs of X drawn without replacement, resampled until
/// every X vertex is covered. X comes first in the vertex numbering.
inline BipartiteGraph random_lemma1_graph(std::size_t k, std::mt19937_64& rng) {
  if (k < 2) throw InputError("k must be at least 2");
  const std::size_t ny = k * (k - 1) / 2;
  const std::size_t hi = std::max(k + 1, std::min(k * (k - 1), k + 4));
  const std::size_t nx = std::uniform_int_distribution<std::size_t>(k + 1, hi)(rng);
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId a = 0; a < nx; ++a)
    for (VertexId b = a + 1; b < nx; ++b) pairs.emplace_back(a, b);
  for (;;) {
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::vector<bool> covered(nx, false);
    for (std::size_t i = 0; i < ny; ++i) covered[pairs[i].first] = covered[pairs[i].second] = true;
    if (std::find(covered.begin(), covered.end(), false) != covered.end()) continue;
    BipartiteGraph bg{Graph(nx + ny), {}, {}};
    for (VertexId x = 0; x < nx; ++x) bg.x_side.push_back(x);
    for (std::size_t i = 0; i < ny; ++i) {
      VertexId y = nx + i;
      bg.y_side.push_back(y);
      bg.graph.add_edge(pairs[i].first, y);
      bg.graph.add_edge(pairs[i].second, y);
    }
    return bg;
  }
}

}  // namespace mint
