#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "mint/graph.hpp"

namespace mint {

namespace detail {

/// Fixed-width-at-runtime bitset usable as a hash key.
struct VertexBits {
  std::vector<std::uint64_t> words;

  explicit VertexBits(std::size_t n = 0) : words((n + 63) / 64, 0) {}

  bool test(std::size_t i) const { return (words[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t lowest() const {
    for (std::size_t w = 0; w < words.size(); ++w)
      if (words[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words[w]));
    return npos;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  friend bool operator==(const VertexBits&, const VertexBits&) = default;
};

struct VertexBitsHash {
  std::size_t operator()(const VertexBits& b) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t w : b.words) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

/// Search order: breadth-first through each component, starting from a vertex
/// of minimum degree and visiting neighbours by ascending degree (ties to the
/// lower id). Neighbouring vertices end up close together, which keeps the set
/// of partly processed vertices, and with it the memo, small.
inline std::vector<VertexId> search_order(const std::vector<std::vector<VertexId>>& nbrs) {
  const std::size_t n = nbrs.size();
  auto by_degree = [&](VertexId a, VertexId b) {
    return nbrs[a].size() != nbrs[b].size() ? nbrs[a].size() < nbrs[b].size() : a < b;
  };
  std::vector<VertexId> starts(n);
  std::iota(starts.begin(), starts.end(), 0);
  std::sort(starts.begin(), starts.end(), by_degree);
  std::vector<bool> seen(n, false);
  std::vector<VertexId> order;
  order.reserve(n);
  std::vector<VertexId> fresh;
  for (VertexId s : starts) {
    if (seen[s]) continue;
    seen[s] = true;
    std::size_t head = order.size();
    order.push_back(s);
    for (; head < order.size(); ++head) {
      fresh.clear();
      for (VertexId u : nbrs[order[head]])
        if (!seen[u]) {
          seen[u] = true;
          fresh.push_back(u);
        }
      std::sort(fresh.begin(), fresh.end(), by_degree);
      order.insert(order.end(), fresh.begin(), fresh.end());
    }
  }
  return order;
}

/// Exact maximum-weight matching value. Vertices are renumbered by
/// search_order; the search then branches on the first free vertex (leave it
/// unmatched, or match it to each free neighbour), memoised on the set of free
/// vertices. Parallel edges collapse to their heaviest copy; loops and
/// zero-weight edges are dropped because they never raise the value.
class MatchingSearch {
 public:
  explicit MatchingSearch(std::size_t vertex_count) : adj_(vertex_count) {}

  void add_edge(VertexId u, VertexId v, Weight w) {
    if (u == v || w <= 0) return;
    link(u, v, w);
    link(v, u, w);
  }

  Weight solve_all() {
    renumber();
    VertexBits all(adj_.size());
    for (std::size_t v = 0; v < adj_.size(); ++v) all.set(v);
    if (adj_.size() <= 64) return solve_small(all.words.empty() ? 0 : all.words[0]);
    return solve_large(std::move(all));
  }

 private:
  void link(VertexId u, VertexId v, Weight w) {
    for (auto& [x, wx] : adj_[u]) {
      if (x == v) {
        wx = std::max(wx, w);
        return;
      }
    }
    adj_[u].emplace_back(v, w);
  }

  void renumber() {
    std::vector<std::vector<VertexId>> nbrs(adj_.size());
    for (std::size_t v = 0; v < adj_.size(); ++v)
      for (const auto& [u, w] : adj_[v]) nbrs[v].push_back(u);
    const auto order = search_order(nbrs);
    std::vector<VertexId> rank(adj_.size());
    for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = k;
    std::vector<std::vector<std::pair<VertexId, Weight>>> out(adj_.size());
    for (std::size_t v = 0; v < adj_.size(); ++v)
      for (const auto& [u, w] : adj_[v]) out[rank[v]].emplace_back(rank[u], w);
    adj_ = std::move(out);
  }

  Weight solve_small(std::uint64_t free) {
    while (free != 0) {
      auto v = static_cast<std::size_t>(std::countr_zero(free));
      bool has_partner = false;
      for (const auto& [u, w] : adj_[v]) {
        if ((free >> u) & 1U) {
          has_partner = true;
          break;
        }
      }
      if (has_partner) break;
      free &= free - 1;
    }
    if (free == 0) return 0;
    if (auto it = memo_small_.find(free); it != memo_small_.end()) return it->second;

    auto v = static_cast<std::size_t>(std::countr_zero(free));
    std::uint64_t rest = free & (free - 1);
    Weight best = solve_small(rest);
    for (const auto& [u, w] : adj_[v]) {
      if ((rest >> u) & 1U) best = std::max(best, w + solve_small(rest & ~(std::uint64_t{1} << u)));
    }
    memo_small_.emplace(free, best);
    return best;
  }

  Weight solve_large(VertexBits free) {
    for (;;) {
      std::size_t v = free.lowest();
      if (v == VertexBits::npos) return 0;
      bool has_partner = false;
      for (const auto& [u, w] : adj_[v]) {
        if (free.test(u)) {
          has_partner = true;
          break;
        }
      }
      if (has_partner) break;
      free.reset(v);
    }
    if (auto it = memo_large_.find(free); it != memo_large_.end()) return it->second;

    std::size_t v = free.lowest();
    VertexBits rest = free;
    rest.reset(v);
    Weight best = solve_large(rest);
    for (const auto& [u, w] : adj_[v]) {
      if (!rest.test(u)) continue;
      VertexBits next = rest;
      next.reset(u);
      best = std::max(best, w + solve_large(std::move(next)));
    }
    memo_large_.emplace(std::move(free), best);
    return best;
  }

  std::vector<std::vector<std::pair<VertexId, Weight>>> adj_;
  std::unordered_map<std::uint64_t, Weight> memo_small_;
  std::unordered_map<VertexBits, Weight, VertexBitsHash> memo_large_;
};

/// Same branching as MatchingSearch, but every state also carries the edge set
/// of its best matching. Among equal-weight matchings of positive-weight edges
/// the lexicographically smallest sorted id list is the one whose first
/// differing edge is smaller; that order is preserved when the same edge is
/// added to both sides, so the memoised optimum of each state stays optimal
/// whichever vertex the state branches on.
class WitnessSearch {
 public:
  WitnessSearch(std::size_t vertex_count, std::size_t edge_count)
      : adj_(vertex_count), edge_count_(edge_count) {}

  void add_edge(VertexId u, VertexId v, Weight w, EdgeId id) {
    if (u == v || w <= 0) return;
    adj_[u].push_back({v, w, id});
    adj_[v].push_back({u, w, id});
  }

  struct Best {
    Weight weight = 0;
    VertexBits edges;  // indexed by edge id
  };

  Best solve_all() {
    std::vector<std::vector<VertexId>> nbrs(adj_.size());
    for (std::size_t v = 0; v < adj_.size(); ++v)
      for (const Arc& a : adj_[v]) nbrs[v].push_back(a.to);
    const auto order = search_order(nbrs);
    std::vector<VertexId> rank(adj_.size());
    for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = k;
    std::vector<std::vector<Arc>> out(adj_.size());
    for (std::size_t v = 0; v < adj_.size(); ++v)
      for (const Arc& a : adj_[v]) out[rank[v]].push_back({rank[a.to], a.weight, a.id});
    adj_ = std::move(out);

    VertexBits all(adj_.size());
    for (std::size_t v = 0; v < adj_.size(); ++v) all.set(v);
    return solve(std::move(all));
  }

 private:
  struct Arc {
    VertexId to;
    Weight weight;
    EdgeId id;
  };

  // True when `a` holds the smaller edge at the first position where a and b differ.
  static bool lex_before(const VertexBits& a, const VertexBits& b) {
    for (std::size_t w = 0; w < a.words.size(); ++w) {
      const std::uint64_t diff = a.words[w] ^ b.words[w];
      if (diff != 0) return (a.words[w] & (diff & (~diff + 1))) != 0;
    }
    return false;
  }

  const Best& solve(VertexBits free) {
    for (;;) {
      std::size_t v = free.lowest();
      if (v == VertexBits::npos) break;
      if (std::any_of(adj_[v].begin(), adj_[v].end(), [&](const Arc& a) { return free.test(a.to); })) break;
      free.reset(v);
    }
    if (auto it = memo_.find(free); it != memo_.end()) return it->second;
    std::size_t v = free.lowest();
    if (v == VertexBits::npos) return memo_.emplace(std::move(free), Best{0, VertexBits(edge_count_)}).first->second;

    VertexBits rest = free;
    rest.reset(v);
    Best best = solve(rest);
    for (const Arc& a : adj_[v]) {
      if (!rest.test(a.to)) continue;
      VertexBits next = rest;
      next.reset(a.to);
      const Best& sub = solve(std::move(next));
      const Weight total = a.weight + sub.weight;
      if (total < best.weight) continue;
      VertexBits edges = sub.edges;
      edges.set(a.id);
      if (total > best.weight || lex_before(edges, best.edges)) best = Best{total, std::move(edges)};
    }
    return memo_.emplace(std::move(free), std::move(best)).first->second;
  }

  std::vector<std::vector<Arc>> adj_;
  std::size_t edge_count_;
  std::unordered_map<VertexBits, Best, VertexBitsHash> memo_;
};

}  // namespace detail

/// nu(G, w): weight of a maximum-weight matching.
inline Weight matching_value(const Graph& g) {
  detail::MatchingSearch search(g.vertex_count());
  for (const Edge& e : g.edges()) search.add_edge(e.u, e.v, e.weight);
  return search.solve_all();
}

/// nu(G - U) without materialising the reduced graph.
inline Weight matching_value_without(const Graph& g, std::span<const EdgeId> removed) {
  std::vector<bool> gone(g.edge_count(), false);
  for (EdgeId id : removed) gone.at(id) = true;
  detail::MatchingSearch search(g.vertex_count());
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    if (gone[id]) continue;
    const Edge& e = g.edges()[id];
    search.add_edge(e.u, e.v, e.weight);
  }
  return search.solve_all();
}

struct MatchingResult {
  Weight value = 0;
  Matching matching;
};

/// Exact maximum-weight matching together with a witness. Among all optimal
/// matchings of positive-weight edges the lexicographically smallest sorted
/// edge-index list is returned, so the witness is a pure function of the graph
/// including its edge order.
inline MatchingResult max_weight_matching(const Graph& g) {
  detail::WitnessSearch search(g.vertex_count(), g.edge_count());
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edges()[id];
    search.add_edge(e.u, e.v, e.weight, id);
  }
  auto best = search.solve_all();
  MatchingResult result;
  result.value = best.weight;
  for (EdgeId id = 0; id < g.edge_count(); ++id)
    if (best.edges.test(id)) result.matching.edges.push_back(id);
  return result;
}

}  // namespace mint
