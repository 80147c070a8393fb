#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mint/graph.hpp"
#include "mint/interdiction.hpp"
#include "mint/matching.hpp"
#include "mint/treedecomp.hpp"

namespace mint {

/// Vertices V_i and edges E_i of the graph G_i hanging below a nice-tree node.
struct SubgraphScope {
  NodeId node = 0;
  std::vector<VertexId> vertices;  // V_i, ascending
  std::vector<EdgeId> edges;       // E_i = edges with both endpoints in V_i, ascending
  std::vector<VertexId> bag;       // X_i
};

inline std::vector<SubgraphScope> subgraph_scopes(const NiceTreeDecomposition& ntd, const Graph& g) {
  auto below = subtree_vertices(ntd);
  std::vector<SubgraphScope> out(ntd.nodes.size());
  for (NodeId i = 0; i < ntd.nodes.size(); ++i) {
    out[i].node = i;
    out[i].bag = ntd.nodes[i].bag;
    std::vector<bool> in(g.vertex_count(), false);
    for (VertexId v : below[i]) in[v] = true;
    for (EdgeId id = 0; id < g.edge_count(); ++id)
      if (in[g.edges()[id].u] && in[g.edges()[id].v]) out[i].edges.push_back(id);
    out[i].vertices = std::move(below[i]);
  }
  return out;
}

/// One realizable profile a_i at a node.
///
/// values[m] = a_i(X) where X is the set of bag vertices selected by bitmask m
/// (bit k = k-th smallest bag vertex): the weight of a maximum matching of
/// G_i - U_i that leaves every vertex of X unsaturated.
///
/// Edges with both endpoints in the bag may be present in both subtrees of a
/// join. The entry therefore also records which of those "tracked" edges its
/// realizer removed, so a join only pairs children that agree on them and the
/// shared edges are paid for once.
struct ProfileEntry {
  std::uint64_t removed_tracked = 0;  // bits over DPTable::tracked_edges
  std::vector<Weight> values;
  Weight cost = 0;               // cheapest realizer found
  std::vector<EdgeId> witness;   // a realizing interdiction set of exactly that cost, ascending
};

/// Realizable profiles of one nice-tree node for all budgets 0..budget.
///
/// Each (tracked-removal, profile) pair is stored once with the cheapest known
/// realizer, so the set for budget b is every profile whose cost is <= b.
/// That makes set(b) a subset of set(b + 1) by construction.
class DPTable {
 public:
  DPTable() = default;
  DPTable(NodeId node, std::vector<VertexId> bag, std::vector<EdgeId> tracked, Weight budget)
      : node_(node), bag_(std::move(bag)), tracked_(std::move(tracked)), budget_(budget) {}

  NodeId node() const noexcept { return node_; }
  const std::vector<VertexId>& bag() const noexcept { return bag_; }
  const std::vector<EdgeId>& tracked_edges() const noexcept { return tracked_; }
  Weight budget() const noexcept { return budget_; }
  const std::vector<ProfileEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Adds a realizable entry, keeping the cheaper (then lexicographically smaller)
  /// realizer on collision. Entries above the budget are ignored.
  void insert(ProfileEntry entry) {
    if (entry.cost > budget_) return;
    Key key{entry.removed_tracked, entry.values};
    auto [it, fresh] = index_.try_emplace(std::move(key), entries_.size());
    if (fresh) {
      entries_.push_back(std::move(entry));
    } else if (const ProfileEntry& cur = entries_[it->second];
               entry.cost < cur.cost || (entry.cost == cur.cost && entry.witness < cur.witness)) {
      entries_[it->second] = std::move(entry);
    }
  }

  /// A_i^b: distinct profiles realizable with budget b, sorted.
  std::vector<std::vector<Weight>> profiles_at(Weight b) const {
    std::vector<std::vector<Weight>> out;
    for (const ProfileEntry& e : entries_)
      if (e.cost <= b) out.push_back(e.values);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  struct Key {
    std::uint64_t removed;
    std::vector<Weight> values;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = k.removed * 0x9e3779b97f4a7c15ULL;
      for (Weight v : k.values) h = (h ^ static_cast<std::uint64_t>(v)) * 0x100000001b3ULL + (h >> 29);
      return static_cast<std::size_t>(h);
    }
  };

  NodeId node_ = 0;
  std::vector<VertexId> bag_;
  std::vector<EdgeId> tracked_;
  Weight budget_ = 0;
  std::vector<ProfileEntry> entries_;
  std::unordered_map<Key, std::size_t, KeyHash> index_;
};

/// Drops entries that another entry with the same tracked removals dominates:
/// cost no larger and pointwise no larger values. Never changes the optimum.
inline DPTable prune_dominated(const DPTable& table) {
  std::vector<const ProfileEntry*> order;
  for (const ProfileEntry& e : table.entries()) order.push_back(&e);
  auto sum = [](const ProfileEntry* e) {
    Weight s = 0;
    for (Weight v : e->values) s += v;
    return s;
  };
  std::stable_sort(order.begin(), order.end(), [&](const ProfileEntry* a, const ProfileEntry* b) {
    if (a->cost != b->cost) return a->cost < b->cost;
    return sum(a) < sum(b);
  });
  std::map<std::uint64_t, std::vector<const ProfileEntry*>> kept;
  for (const ProfileEntry* e : order) {
    auto& front = kept[e->removed_tracked];
    bool dominated = std::any_of(front.begin(), front.end(), [&](const ProfileEntry* k) {
      if (k->cost > e->cost) return false;
      for (std::size_t m = 0; m < e->values.size(); ++m)
        if (k->values[m] > e->values[m]) return false;
      return true;
    });
    if (!dominated) front.push_back(e);
  }
  DPTable out(table.node(), table.bag(), table.tracked_edges(), table.budget());
  for (const ProfileEntry& e : table.entries()) {
    const auto& front = kept[e.removed_tracked];
    if (std::find(front.begin(), front.end(), &e) != front.end()) out.insert(e);
  }
  return out;
}

struct DPOptions {
  bool prune = false;
  std::size_t max_bag_size = 20;
};

struct DPStats {
  std::size_t nodes = 0;
  std::size_t total_entries = 0;
  std::size_t max_entries = 0;
  Weight max_profile_value = 0;
  Weight weight_bound = 0;  // sum of weights: the actual range of profile values
  Weight cost_bound = 0;    // sum of costs
};

/// Bottom-up evaluation of realizable profile sets over a nice tree decomposition.
///
/// Non-removable edges are never offered to the interdictor, which is the same
/// as giving them cost budget + 1.
class DPSolver {
 public:
  DPSolver(const Instance& inst, const NiceTreeDecomposition& ntd, DPOptions opts = {})
      : inst_(inst), g_(inst.graph()), ntd_(ntd), opts_(opts) {
    if (auto problems = validate_nice(ntd, g_); !problems.empty())
      throw InputError("invalid nice tree decomposition: " + describe(problems.front()));
    if (width(ntd) + 1 > static_cast<std::int64_t>(opts_.max_bag_size))
      throw SizeError("decomposition width " + std::to_string(width(ntd)) + " exceeds the supported maximum");
    compute_tracked();
  }

  const std::vector<EdgeId>& tracked_edges(NodeId node) const { return tracked_.at(node); }

  DPTable leaf_table(NodeId node) const {
    const NiceNode& n = ntd_.nodes.at(node);
    if (n.kind != NodeKind::Leaf) throw InternalError("leaf_table on a non-leaf node");
    DPTable out(node, n.bag, tracked_[node], inst_.budget());
    out.insert(ProfileEntry{0, std::vector<Weight>(std::size_t{1} << n.bag.size(), 0), 0, {}});
    return out;
  }

  DPTable introduce_table(NodeId node, const DPTable& child) const {
    const NiceNode& n = ntd_.nodes.at(node);
    if (n.kind != NodeKind::Introduce) throw InternalError("introduce_table on a non-introduce node");
    const std::size_t size = n.bag.size();
    const std::size_t pos = position(n.bag, n.vertex);
    const auto& child_bag = child.bag();

    // E_i^v: edges from v into the child bag, plus loops at v.
    struct NewEdge {
      EdgeId id;
      Weight weight;
      std::size_t parent_pos;
      std::size_t child_pos;
      bool loop;
    };
    std::vector<NewEdge> fresh;
    for (EdgeId id : incident_[n.vertex]) {
      const Edge& e = g_.edges()[id];
      if (e.is_loop()) {
        fresh.push_back({id, e.weight, pos, 0, true});
        continue;
      }
      VertexId w = e.other(n.vertex);
      if (!detail::bag_contains(child_bag, w)) continue;
      fresh.push_back({id, e.weight, position(n.bag, w), position(child_bag, w), false});
    }
    std::vector<std::size_t> offerable;
    for (std::size_t k = 0; k < fresh.size(); ++k)
      if (inst_.is_removable(fresh[k].id)) offerable.push_back(k);
    if (offerable.size() > 62) throw SizeError("too many edges at one introduce node");

    auto remap = mask_remap(child.tracked_edges(), tracked_[node]);
    std::vector<int> fresh_bit(fresh.size(), -1);
    for (std::size_t k = 0; k < fresh.size(); ++k) fresh_bit[k] = tracked_position(node, fresh[k].id);

    DPTable out(node, n.bag, tracked_[node], inst_.budget());
    std::vector<bool> removed(fresh.size(), false);
    std::vector<Weight> values(std::size_t{1} << size);

    for (const ProfileEntry& a : child.entries()) {
      const std::uint64_t base_mask = apply_remap(remap, a.removed_tracked);
      // Enumerate U_i^v over the offerable edges, pruned by the remaining budget.
      auto emit = [&](Weight spent) {
        for (std::uint64_t x = 0; x < values.size(); ++x) {
          const std::uint64_t cm = compress(x, pos);
          Weight best = a.values[cm];
          if (!((x >> pos) & 1U)) {
            for (std::size_t k = 0; k < fresh.size(); ++k) {
              const NewEdge& e = fresh[k];
              if (e.loop || removed[k] || ((x >> e.parent_pos) & 1U)) continue;
              best = std::max(best, e.weight + a.values[cm | (std::uint64_t{1} << e.child_pos)]);
            }
          }
          values[x] = best;
        }
        ProfileEntry entry{base_mask, values, a.cost + spent, a.witness};
        for (std::size_t k = 0; k < fresh.size(); ++k) {
          if (!removed[k]) continue;
          entry.witness.push_back(fresh[k].id);
          if (fresh_bit[k] >= 0) entry.removed_tracked |= std::uint64_t{1} << fresh_bit[k];
        }
        std::sort(entry.witness.begin(), entry.witness.end());
        out.insert(std::move(entry));
      };
      auto walk = [&](auto&& self, std::size_t from, Weight spent) -> void {
        emit(spent);
        for (std::size_t t = from; t < offerable.size(); ++t) {
          std::size_t k = offerable[t];
          Weight c = g_.edges()[fresh[k].id].cost;
          if (c > inst_.budget() - a.cost - spent) continue;
          removed[k] = true;
          self(self, t + 1, spent + c);
          removed[k] = false;
        }
      };
      walk(walk, 0, 0);
    }
    return finish(std::move(out));
  }

  DPTable forget_table(NodeId node, const DPTable& child) const {
    const NiceNode& n = ntd_.nodes.at(node);
    if (n.kind != NodeKind::Forget) throw InternalError("forget_table on a non-forget node");
    const std::size_t pos = position(child.bag(), n.vertex);
    auto remap = mask_remap(child.tracked_edges(), tracked_[node]);
    DPTable out(node, n.bag, tracked_[node], inst_.budget());
    std::vector<Weight> values(std::size_t{1} << n.bag.size());
    for (const ProfileEntry& a : child.entries()) {
      for (std::uint64_t x = 0; x < values.size(); ++x) values[x] = a.values[expand(x, pos)];
      out.insert(ProfileEntry{apply_remap(remap, a.removed_tracked), values, a.cost, a.witness});
    }
    return finish(std::move(out));
  }

  DPTable join_table(NodeId node, const DPTable& left, const DPTable& right) const {
    const NiceNode& n = ntd_.nodes.at(node);
    if (n.kind != NodeKind::Join) throw InternalError("join_table on a non-join node");
    if (left.bag() != n.bag || right.bag() != n.bag) throw InternalError("join children carry different bags");
    const auto& tracked = tracked_[node];
    auto left_remap = mask_remap(left.tracked_edges(), tracked);
    auto right_remap = mask_remap(right.tracked_edges(), tracked);

    std::map<std::uint64_t, std::vector<const ProfileEntry*>> by_mask_right;
    for (const ProfileEntry& b : right.entries()) by_mask_right[apply_remap(right_remap, b.removed_tracked)].push_back(&b);

    const std::uint64_t full = (std::uint64_t{1} << n.bag.size()) - 1;
    DPTable out(node, n.bag, tracked, inst_.budget());
    std::vector<Weight> values(full + 1);
    for (const ProfileEntry& a : left.entries()) {
      const std::uint64_t mask = apply_remap(left_remap, a.removed_tracked);
      auto it = by_mask_right.find(mask);
      if (it == by_mask_right.end()) continue;
      Weight shared = 0;
      for (std::size_t k = 0; k < tracked.size(); ++k)
        if ((mask >> k) & 1U) shared += g_.edges()[tracked[k]].cost;
      for (const ProfileEntry* b : it->second) {
        const Weight cost = a.cost + b->cost - shared;
        if (cost > inst_.budget()) continue;
        // a_i(X) = max over (Y1, Y2) with X within both and Y1 u Y2 = bag of
        // a1(Y1) + a2(Y2). Profiles are anti-monotone, so it suffices to hand
        // every vertex outside X to exactly one side.
        for (std::uint64_t x = 0; x <= full; ++x) {
          const std::uint64_t rest = full & ~x;
          Weight best = 0;
          std::uint64_t s = rest;
          for (;;) {
            best = std::max(best, a.values[x | (rest & ~s)] + b->values[x | s]);
            if (s == 0) break;
            s = (s - 1) & rest;
          }
          values[x] = best;
        }
        ProfileEntry entry{mask, values, cost, {}};
        std::set_union(a.witness.begin(), a.witness.end(), b->witness.begin(), b->witness.end(),
                       std::back_inserter(entry.witness));
        out.insert(std::move(entry));
      }
    }
    return finish(std::move(out));
  }

  /// Processes every node in postorder. With keep_all the tables of all nodes
  /// are returned (indexed by node id); otherwise only the root table survives.
  std::vector<std::optional<DPTable>> run(bool keep_all, DPStats* stats = nullptr) const {
    std::vector<std::optional<DPTable>> tables(ntd_.nodes.size());
    if (stats) {
      *stats = DPStats{};
      stats->weight_bound = g_.total_weight();
      stats->cost_bound = g_.total_cost();
    }
    for (NodeId i : ntd_.postorder()) {
      const NiceNode& n = ntd_.nodes[i];
      switch (n.kind) {
        case NodeKind::Leaf: tables[i] = leaf_table(i); break;
        case NodeKind::Introduce: tables[i] = introduce_table(i, *tables[n.children[0]]); break;
        case NodeKind::Forget: tables[i] = forget_table(i, *tables[n.children[0]]); break;
        case NodeKind::Join: tables[i] = join_table(i, *tables[n.children[0]], *tables[n.children[1]]); break;
      }
      if (stats) {
        ++stats->nodes;
        stats->total_entries += tables[i]->size();
        stats->max_entries = std::max(stats->max_entries, tables[i]->size());
        for (const ProfileEntry& e : tables[i]->entries())
          for (Weight v : e.values) stats->max_profile_value = std::max(stats->max_profile_value, v);
      }
      if (!keep_all)
        for (NodeId c : n.children) tables[c].reset();
    }
    return tables;
  }

 private:
  static std::size_t position(const std::vector<VertexId>& bag, VertexId v) {
    auto it = std::lower_bound(bag.begin(), bag.end(), v);
    if (it == bag.end() || *it != v) throw InternalError("vertex missing from bag");
    return static_cast<std::size_t>(it - bag.begin());
  }

  // Drop bit `pos` from a subset mask.
  static std::uint64_t compress(std::uint64_t x, std::size_t pos) {
    const std::uint64_t low = (std::uint64_t{1} << pos) - 1;
    return (x & low) | ((x >> (pos + 1)) << pos);
  }

  // Insert a zero bit at `pos`.
  static std::uint64_t expand(std::uint64_t x, std::size_t pos) {
    const std::uint64_t low = (std::uint64_t{1} << pos) - 1;
    return (x & low) | ((x >> pos) << (pos + 1));
  }

  static std::vector<int> mask_remap(const std::vector<EdgeId>& from, const std::vector<EdgeId>& to) {
    std::vector<int> out(from.size(), -1);
    for (std::size_t k = 0; k < from.size(); ++k) {
      auto it = std::lower_bound(to.begin(), to.end(), from[k]);
      if (it != to.end() && *it == from[k]) out[k] = static_cast<int>(it - to.begin());
    }
    return out;
  }

  static std::uint64_t apply_remap(const std::vector<int>& remap, std::uint64_t mask) {
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < remap.size(); ++k)
      if (((mask >> k) & 1U) && remap[k] >= 0) out |= std::uint64_t{1} << remap[k];
    return out;
  }

  int tracked_position(NodeId node, EdgeId id) const {
    const auto& t = tracked_[node];
    auto it = std::lower_bound(t.begin(), t.end(), id);
    return (it != t.end() && *it == id) ? static_cast<int>(it - t.begin()) : -1;
  }

  DPTable finish(DPTable table) const { return opts_.prune ? prune_dominated(table) : table; }

  // An edge inside bag X_i is tracked at i when some join at or above i also
  // holds both of its endpoints; only those edges can be shared by two subtrees.
  void compute_tracked() {
    incident_.assign(g_.vertex_count(), {});
    for (EdgeId id = 0; id < g_.edge_count(); ++id) {
      const Edge& e = g_.edges()[id];
      incident_[e.u].push_back(id);
      if (!e.is_loop()) incident_[e.v].push_back(id);
    }
    auto internal = [&](const std::vector<VertexId>& bag) {
      std::vector<EdgeId> out;
      for (VertexId v : bag)
        for (EdgeId id : incident_[v]) {
          const Edge& e = g_.edges()[id];
          if (e.other(v) >= v && detail::bag_contains(bag, e.other(v))) out.push_back(id);
        }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    };
    tracked_.assign(ntd_.nodes.size(), {});
    if (ntd_.nodes.empty()) return;
    std::vector<std::pair<NodeId, std::vector<EdgeId>>> stack{{ntd_.root, {}}};
    while (!stack.empty()) {
      auto [node, inherited] = std::move(stack.back());
      stack.pop_back();
      const NiceNode& n = ntd_.nodes[node];
      auto mine = internal(n.bag);
      std::vector<EdgeId> tracked;
      if (n.kind == NodeKind::Join) {
        tracked = mine;
      } else {
        std::set_intersection(mine.begin(), mine.end(), inherited.begin(), inherited.end(),
                              std::back_inserter(tracked));
      }
      if (tracked.size() > 64) throw SizeError("more than 64 shared bag edges at one node");
      for (NodeId c : n.children) stack.emplace_back(c, tracked);
      tracked_[node] = std::move(tracked);
    }
  }

  const Instance& inst_;
  const Graph& g_;
  const NiceTreeDecomposition& ntd_;
  DPOptions opts_;
  std::vector<std::vector<EdgeId>> incident_;
  std::vector<std::vector<EdgeId>> tracked_;
};

namespace detail {

/// Root entry with the smallest a(empty) among realizers of cost <= b; ties go
/// to the cheaper, then lexicographically smaller, interdiction set.
inline const ProfileEntry* best_root_entry(const DPTable& root, Weight b) {
  const ProfileEntry* best = nullptr;
  for (const ProfileEntry& e : root.entries()) {
    if (e.cost > b) continue;
    if (!best || e.values[0] < best->values[0] ||
        (e.values[0] == best->values[0] &&
         (e.cost < best->cost || (e.cost == best->cost && e.witness < best->witness))))
      best = &e;
  }
  return best;
}

inline Solution solution_from_entry(const Graph& g, const ProfileEntry& e) {
  Solution s = make_solution(g, e.witness);
  if (s.value != e.values[0])
    throw InternalError("recovered interdiction set does not reproduce the table value");
  return s;
}

}  // namespace detail

/// nu_B(G) from the realizable profiles at the root: min over a_r in A_r^B of
/// a_r(empty), with the realizing interdiction set recovered from the table.
inline Solution solve_dp(const Instance& inst, const NiceTreeDecomposition& ntd, DPOptions opts = {},
                         DPStats* stats = nullptr) {
  if (inst.graph().vertex_count() == 0 || inst.graph().edge_count() == 0) {
    if (inst.graph().vertex_count() > 0)
      if (auto problems = validate_nice(ntd, inst.graph()); !problems.empty())
        throw InputError("invalid nice tree decomposition: " + describe(problems.front()));
    if (stats) *stats = DPStats{};
    return Solution{};
  }
  DPSolver solver(inst, ntd, opts);
  auto tables = solver.run(false, stats);
  const DPTable& root = *tables[ntd.root];
  const ProfileEntry* best = detail::best_root_entry(root, inst.budget());
  if (!best) throw InternalError("root table has no entry within budget");
  return detail::solution_from_entry(inst.graph(), *best);
}

/// Solutions for every budget 0..inst.budget() from a single bottom-up pass.
inline std::vector<Solution> solve_dp_budgets(const Instance& inst, const NiceTreeDecomposition& ntd,
                                              DPOptions opts = {}) {
  const auto budgets = static_cast<std::size_t>(inst.budget()) + 1;
  if (inst.graph().vertex_count() == 0 || inst.graph().edge_count() == 0) {
    if (inst.graph().vertex_count() > 0)
      if (auto problems = validate_nice(ntd, inst.graph()); !problems.empty())
        throw InputError("invalid nice tree decomposition: " + describe(problems.front()));
    return std::vector<Solution>(budgets);
  }
  DPSolver solver(inst, ntd, opts);
  auto tables = solver.run(false);
  const DPTable& root = *tables[ntd.root];
  std::vector<Solution> out;
  out.reserve(budgets);
  for (Weight b = 0; b <= inst.budget(); ++b) {
    const ProfileEntry* best = detail::best_root_entry(root, b);
    if (!best) throw InternalError("root table has no entry within budget");
    out.push_back(detail::solution_from_entry(inst.graph(), *best));
  }
  return out;
}

/// MINT decision through the dynamic program.
inline bool decide_dp(const Instance& inst, const NiceTreeDecomposition& ntd, Weight threshold,
                      DPOptions opts = {}) {
  return solve_dp(inst, ntd, opts).value <= threshold;
}

/// Heuristic decomposition followed by nice conversion.
inline NiceTreeDecomposition default_nice_decomposition(const Graph& g) {
  return to_nice(heuristic_decomposition(g), g);
}

}  // namespace mint
