#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "mint/graph.hpp"
#include "mint/matching.hpp"

namespace mint {

/// A matching interdiction network together with a budget and an optional set
/// of edges the interdictor may not remove.
class Instance {
 public:
  Instance() = default;

  Instance(Graph graph, Weight budget, std::vector<EdgeId> non_removable = {})
      : graph_(std::move(graph)), budget_(budget), non_removable_(std::move(non_removable)) {
    if (budget_ < 0) throw InputError("budget must be non-negative");
    std::sort(non_removable_.begin(), non_removable_.end());
    non_removable_.erase(std::unique(non_removable_.begin(), non_removable_.end()), non_removable_.end());
    if (!non_removable_.empty() && non_removable_.back() >= graph_.edge_count())
      throw InputError("non-removable edge index " + std::to_string(non_removable_.back()) + " out of range");
    removable_.assign(graph_.edge_count(), true);
    for (EdgeId id : non_removable_) removable_[id] = false;
  }

  const Graph& graph() const noexcept { return graph_; }
  Weight budget() const noexcept { return budget_; }
  const std::vector<EdgeId>& non_removable() const noexcept { return non_removable_; }
  bool is_removable(EdgeId id) const { return removable_.at(id); }

  std::vector<EdgeId> removable_edges() const {
    std::vector<EdgeId> out;
    for (EdgeId id = 0; id < graph_.edge_count(); ++id)
      if (removable_[id]) out.push_back(id);
    return out;
  }

  Instance with_budget(Weight budget) const { return Instance(graph_, budget, non_removable_); }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.graph_ == b.graph_ && a.budget_ == b.budget_ && a.non_removable_ == b.non_removable_;
  }

 private:
  Graph graph_;
  Weight budget_ = 0;
  std::vector<EdgeId> non_removable_;
  std::vector<bool> removable_;
};

struct Solution {
  std::vector<EdgeId> interdiction_set;  // sorted
  Weight value = 0;                      // nu(G - interdiction_set)
  Matching witness;                      // optimal matching in G - interdiction_set, original edge ids

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// Fills in the witness matching for a chosen interdiction set, in original edge ids.
inline Solution make_solution(const Graph& g, std::vector<EdgeId> interdiction_set) {
  std::sort(interdiction_set.begin(), interdiction_set.end());
  EdgeRemoval reduced = remove_edges(g, interdiction_set);
  MatchingResult best = max_weight_matching(reduced.graph);
  std::vector<EdgeId> new_to_old(reduced.graph.edge_count());
  for (EdgeId old = 0; old < reduced.edge_map.size(); ++old)
    if (reduced.edge_map[old]) new_to_old[*reduced.edge_map[old]] = old;
  Solution s;
  s.interdiction_set = std::move(interdiction_set);
  s.value = best.value;
  for (EdgeId id : best.matching.edges) s.witness.edges.push_back(new_to_old[id]);
  return s;
}

struct BruteForceOptions {
  std::size_t max_removable_edges = 25;
};

namespace detail {

/// Depth-first enumeration of budget-feasible interdiction sets in lexicographic
/// order of their sorted edge lists. Stops as soon as a set with value <= stop_at
/// is found (or value 0, which cannot be beaten).
class InterdictionEnumerator {
 public:
  InterdictionEnumerator(const Instance& inst, Weight stop_at)
      : g_(inst.graph()), budget_(inst.budget()), stop_at_(stop_at), candidates_(inst.removable_edges()),
        gone_(g_.edge_count(), false) {}

  void run() { visit(0, 0); }

  Weight best_value() const { return best_value_; }
  const std::vector<EdgeId>& best_set() const { return best_set_; }

 private:
  void visit(std::size_t from, Weight spent) {
    if (done_) return;
    Weight value = evaluate();
    if (!best_value_seen_ || value < best_value_) {
      best_value_seen_ = true;
      best_value_ = value;
      best_set_ = current_;
      if (value <= stop_at_ || value == 0) {
        done_ = true;
        return;
      }
    }
    for (std::size_t i = from; i < candidates_.size() && !done_; ++i) {
      EdgeId id = candidates_[i];
      Weight c = g_.edges()[id].cost;
      if (c > budget_ - spent) continue;
      current_.push_back(id);
      gone_[id] = true;
      visit(i + 1, spent + c);
      gone_[id] = false;
      current_.pop_back();
    }
  }

  Weight evaluate() const {
    MatchingSearch search(g_.vertex_count());
    for (EdgeId id = 0; id < g_.edge_count(); ++id) {
      if (gone_[id]) continue;
      const Edge& e = g_.edges()[id];
      search.add_edge(e.u, e.v, e.weight);
    }
    return search.solve_all();
  }

  const Graph& g_;
  Weight budget_;
  Weight stop_at_;
  std::vector<EdgeId> candidates_;
  std::vector<bool> gone_;
  std::vector<EdgeId> current_;
  bool done_ = false;
  bool best_value_seen_ = false;
  Weight best_value_ = 0;
  std::vector<EdgeId> best_set_;
};

inline void check_brute_force_guard(const Instance& inst, const BruteForceOptions& opts) {
  const std::size_t removable = inst.graph().edge_count() - inst.non_removable().size();
  if (removable > opts.max_removable_edges)
    throw SizeError("brute force limited to " + std::to_string(opts.max_removable_edges) +
                    " removable edges, instance has " + std::to_string(removable));
}

}  // namespace detail

/// nu_B(G) by exhaustive search over every interdiction set U (E minus N) with
/// c(U) <= B. Among optimal sets the lexicographically smallest is returned.
inline Solution solve_brute_force(const Instance& inst, const BruteForceOptions& opts = {}) {
  detail::check_brute_force_guard(inst, opts);
  detail::InterdictionEnumerator search(inst, -1);
  search.run();
  return make_solution(inst.graph(), search.best_set());
}

/// MINT decision: nu_B(G) <= K. With a non-empty non-removable set and unit
/// costs this is the NMINTU question.
inline bool decide_mint(const Instance& inst, Weight threshold, const BruteForceOptions& opts = {}) {
  detail::check_brute_force_guard(inst, opts);
  if (threshold < 0) return false;
  detail::InterdictionEnumerator search(inst, threshold);
  search.run();
  return search.best_value() <= threshold;
}

/// Copy of g with unit weights and costs. The budget range is {0, ..., |E|}.
inline Instance unit_instance(const Graph& g, Weight budget) {
  if (budget < 0 || budget > static_cast<Weight>(g.edge_count()))
    throw InputError("unit budget must lie in [0, |E|]");
  Graph unit(g.vertex_count());
  for (const Edge& e : g.edges()) unit.add_edge(e.u, e.v, 1, 1);
  return Instance(std::move(unit), budget);
}

/// Checks that `s` is a feasible interdiction for `inst` and that its value and
/// witness agree with the matching oracle. Returns an empty string when valid.
inline std::string check_solution(const Instance& inst, const Solution& s) {
  const Graph& g = inst.graph();
  for (EdgeId id : s.interdiction_set) {
    if (id >= g.edge_count()) return "interdicted edge out of range";
    if (!inst.is_removable(id)) return "interdicted edge " + std::to_string(id) + " is non-removable";
  }
  if (std::adjacent_find(s.interdiction_set.begin(), s.interdiction_set.end()) != s.interdiction_set.end())
    return "interdiction set has duplicates";
  if (total_cost(g, s.interdiction_set) > inst.budget()) return "interdiction set exceeds budget";
  Weight nu = matching_value_without(g, s.interdiction_set);
  if (nu != s.value)
    return "reported value " + std::to_string(s.value) + " but nu(G - U) = " + std::to_string(nu);
  if (!is_matching(g, s.witness.edges)) return "witness is not a matching";
  for (EdgeId id : s.witness.edges)
    if (std::binary_search(s.interdiction_set.begin(), s.interdiction_set.end(), id))
      return "witness uses an interdicted edge";
  if (total_weight(g, s.witness.edges) != s.value) return "witness weight differs from value";
  return {};
}

}  // namespace mint
