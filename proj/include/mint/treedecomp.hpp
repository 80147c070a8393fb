#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mint/graph.hpp"

namespace mint {

using NodeId = std::size_t;

/// Bags X_i on the nodes of a tree T = (I, F). Bags are kept sorted ascending.
struct TreeDecomposition {
  std::vector<std::vector<VertexId>> bags;
  std::vector<std::pair<NodeId, NodeId>> tree_edges;
  NodeId root = 0;

  friend bool operator==(const TreeDecomposition&, const TreeDecomposition&) = default;
};

enum class NodeKind { Leaf, Introduce, Forget, Join };

inline const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Leaf: return "leaf";
    case NodeKind::Introduce: return "intro";
    case NodeKind::Forget: return "forget";
    case NodeKind::Join: return "join";
  }
  return "?";
}

struct NiceNode {
  NodeKind kind = NodeKind::Leaf;
  std::vector<VertexId> bag;  // sorted ascending
  VertexId vertex = 0;        // introduced / forgotten vertex; unused for leaf and join
  std::vector<NodeId> children;

  friend bool operator==(const NiceNode&, const NiceNode&) = default;
};

struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;
  NodeId root = 0;

  /// Every node appears after all of its descendants.
  std::vector<NodeId> postorder() const {
    std::vector<NodeId> order;
    if (nodes.empty()) return order;
    order.reserve(nodes.size());
    std::vector<std::pair<NodeId, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
      auto& [node, next_child] = stack.back();
      if (next_child < nodes[node].children.size()) {
        NodeId child = nodes[node].children[next_child++];
        stack.emplace_back(child, 0);
      } else {
        order.push_back(node);
        stack.pop_back();
      }
    }
    return order;
  }

  TreeDecomposition as_tree_decomposition() const {
    TreeDecomposition td;
    td.root = root;
    for (const NiceNode& n : nodes) td.bags.push_back(n.bag);
    for (NodeId i = 0; i < nodes.size(); ++i)
      for (NodeId c : nodes[i].children) td.tree_edges.emplace_back(i, c);
    return td;
  }

  friend bool operator==(const NiceTreeDecomposition&, const NiceTreeDecomposition&) = default;
};

/// max |X_i| - 1; -1 for a decomposition without nodes.
inline std::int64_t width(const TreeDecomposition& td) {
  std::int64_t w = -1;
  for (const auto& bag : td.bags) w = std::max<std::int64_t>(w, static_cast<std::int64_t>(bag.size()) - 1);
  return w;
}

inline std::int64_t width(const NiceTreeDecomposition& ntd) {
  std::int64_t w = -1;
  for (const auto& n : ntd.nodes) w = std::max<std::int64_t>(w, static_cast<std::int64_t>(n.bag.size()) - 1);
  return w;
}

enum class ViolationKind {
  NotATree,          // tree_edges do not form a tree on the node set, or bad root
  VertexOutOfRange,  // a bag names a vertex outside the graph
  VertexUncovered,   // vertex in no bag
  EdgeUncovered,     // no bag contains both endpoints
  Disconnected,      // bags containing the vertex do not induce a subtree
  NodeShape          // nice-form kind/bag relation broken
};

inline const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NotATree: return "not-a-tree";
    case ViolationKind::VertexOutOfRange: return "vertex-out-of-range";
    case ViolationKind::VertexUncovered: return "vertex-uncovered";
    case ViolationKind::EdgeUncovered: return "edge-uncovered";
    case ViolationKind::Disconnected: return "vertex-subtree-disconnected";
    case ViolationKind::NodeShape: return "node-shape";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  std::size_t subject;  // vertex, edge or node id depending on kind
  std::string detail;
};

inline std::string describe(const Violation& v) {
  return std::string(to_string(v.kind)) + " " + std::to_string(v.subject) + ": " + v.detail;
}

namespace detail {

inline bool bag_contains(const std::vector<VertexId>& bag, VertexId v) {
  return std::binary_search(bag.begin(), bag.end(), v);
}

/// Children lists for the tree rooted at `root`, or an empty optional when the
/// edges do not form a tree.
inline std::optional<std::vector<std::vector<NodeId>>> orient_tree(std::size_t node_count,
                                                                  const std::vector<std::pair<NodeId, NodeId>>& edges,
                                                                  NodeId root) {
  if (node_count == 0) {
    if (edges.empty()) return std::vector<std::vector<NodeId>>{};
    return std::nullopt;
  }
  if (root >= node_count || edges.size() != node_count - 1) return std::nullopt;
  std::vector<std::vector<NodeId>> adj(node_count);
  for (auto [a, b] : edges) {
    if (a >= node_count || b >= node_count || a == b) return std::nullopt;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::vector<NodeId>> children(node_count);
  std::vector<bool> seen(node_count, false);
  std::vector<NodeId> queue{root};
  seen[root] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId x = queue[head];
    for (NodeId y : adj[x]) {
      if (seen[y]) continue;
      seen[y] = true;
      children[x].push_back(y);
      queue.push_back(y);
    }
  }
  if (queue.size() != node_count) return std::nullopt;
  return children;
}

}  // namespace detail

/// Checks tree-ness plus the three decomposition axioms. Bags need not be
/// sorted. An empty list means `td` is a tree decomposition of `g`.
inline std::vector<Violation> validate(const TreeDecomposition& td, const Graph& g) {
  std::vector<Violation> out;
  const std::size_t n = td.bags.size();
  auto children = detail::orient_tree(n, td.tree_edges, td.root);
  if (!children) {
    out.push_back({ViolationKind::NotATree, td.root, "tree edges do not form a tree rooted at the given node"});
    // The per-vertex connectivity check needs a tree; coverage checks still run.
  }
  if (n == 0 && g.vertex_count() > 0 && out.empty())
    out.push_back({ViolationKind::NotATree, 0, "empty decomposition of a non-empty graph"});

  std::vector<std::vector<VertexId>> sorted = td.bags;
  for (NodeId i = 0; i < n; ++i) {
    auto& bag = sorted[i];
    std::sort(bag.begin(), bag.end());
    for (VertexId v : bag)
      if (v >= g.vertex_count())
        out.push_back({ViolationKind::VertexOutOfRange, v, "named by bag " + std::to_string(i)});
  }

  std::vector<std::vector<NodeId>> holders(g.vertex_count());
  for (NodeId i = 0; i < n; ++i)
    for (VertexId v : sorted[i])
      if (v < g.vertex_count() && (holders[v].empty() || holders[v].back() != i)) holders[v].push_back(i);

  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (holders[v].empty()) out.push_back({ViolationKind::VertexUncovered, v, "no bag contains it"});

  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edges()[id];
    bool covered = e.u < g.vertex_count() && std::any_of(holders[e.u].begin(), holders[e.u].end(), [&](NodeId i) {
      return detail::bag_contains(sorted[i], e.v);
    });
    if (!covered)
      out.push_back({ViolationKind::EdgeUncovered, id,
                     "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " lies in no bag"});
  }

  if (children) {
    // The nodes holding v form a subtree iff exactly one of them has a parent
    // that does not hold v.
    std::vector<NodeId> parent(n, n);
    for (NodeId i = 0; i < n; ++i)
      for (NodeId c : (*children)[i]) parent[c] = i;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      std::size_t tops = 0;
      for (NodeId i : holders[v])
        if (parent[i] == n || !detail::bag_contains(sorted[parent[i]], v)) ++tops;
      if (tops > 1)
        out.push_back({ViolationKind::Disconnected, v,
                       "bags holding it split into " + std::to_string(tops) + " components"});
    }
  }
  return out;
}

/// Vertex sets V_i (bag of i and all descendants), in ascending order.
inline std::vector<std::vector<VertexId>> subtree_vertices(const NiceTreeDecomposition& ntd) {
  std::vector<std::vector<VertexId>> out(ntd.nodes.size());
  for (NodeId i : ntd.postorder()) {
    std::vector<VertexId> acc = ntd.nodes[i].bag;
    for (NodeId c : ntd.nodes[i].children) {
      std::vector<VertexId> merged;
      std::set_union(acc.begin(), acc.end(), out[c].begin(), out[c].end(), std::back_inserter(merged));
      acc = std::move(merged);
    }
    out[i] = std::move(acc);
  }
  return out;
}

/// Full check of a nice decomposition: the underlying decomposition is valid
/// and every node satisfies its kind's bag relation.
inline std::vector<Violation> validate_nice(const NiceTreeDecomposition& ntd, const Graph& g) {
  std::vector<Violation> out;
  const std::size_t n = ntd.nodes.size();
  if (n == 0) {
    if (g.vertex_count() > 0) out.push_back({ViolationKind::NotATree, 0, "empty decomposition of a non-empty graph"});
    return out;
  }
  // Tree shape: every non-root node has exactly one parent, and the root reaches all.
  std::vector<std::size_t> parents(n, 0);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId c : ntd.nodes[i].children) {
      if (c >= n) {
        out.push_back({ViolationKind::NotATree, i, "child index out of range"});
        return out;
      }
      ++parents[c];
    }
  if (ntd.root >= n || parents[ntd.root] != 0) {
    out.push_back({ViolationKind::NotATree, ntd.root, "root missing or has a parent"});
    return out;
  }
  for (NodeId i = 0; i < n; ++i)
    if (i != ntd.root && parents[i] != 1) {
      out.push_back({ViolationKind::NotATree, i, "node must have exactly one parent"});
      return out;
    }
  if (ntd.postorder().size() != n) {
    out.push_back({ViolationKind::NotATree, ntd.root, "nodes unreachable from root"});
    return out;
  }

  for (NodeId i = 0; i < n; ++i) {
    const NiceNode& node = ntd.nodes[i];
    if (!std::is_sorted(node.bag.begin(), node.bag.end()) ||
        std::adjacent_find(node.bag.begin(), node.bag.end()) != node.bag.end()) {
      out.push_back({ViolationKind::NodeShape, i, "bag not sorted or has duplicates"});
      continue;
    }
    auto shape = [&](const std::string& msg) { out.push_back({ViolationKind::NodeShape, i, msg}); };
    switch (node.kind) {
      case NodeKind::Leaf:
        if (!node.children.empty()) shape("leaf has children");
        if (node.bag.size() != 1) shape("leaf bag must have exactly one vertex");
        break;
      case NodeKind::Introduce: {
        if (node.children.size() != 1) {
          shape("introduce node needs one child");
          break;
        }
        const auto& child = ntd.nodes[node.children[0]].bag;
        std::vector<VertexId> expect = child;
        if (detail::bag_contains(child, node.vertex)) shape("introduced vertex already in child bag");
        expect.insert(std::upper_bound(expect.begin(), expect.end(), node.vertex), node.vertex);
        if (expect != node.bag) shape("bag is not child bag plus the introduced vertex");
        break;
      }
      case NodeKind::Forget: {
        if (node.children.size() != 1) {
          shape("forget node needs one child");
          break;
        }
        const auto& child = ntd.nodes[node.children[0]].bag;
        if (!detail::bag_contains(child, node.vertex)) shape("forgotten vertex not in child bag");
        std::vector<VertexId> expect = child;
        std::erase(expect, node.vertex);
        if (expect != node.bag) shape("bag is not child bag minus the forgotten vertex");
        break;
      }
      case NodeKind::Join:
        if (node.children.size() != 2) {
          shape("join node needs two children");
          break;
        }
        if (ntd.nodes[node.children[0]].bag != node.bag || ntd.nodes[node.children[1]].bag != node.bag)
          shape("join children must carry the same bag");
        break;
    }
  }

  // Introduced vertices only see the child bag below them: that already
  // follows from the three axioms, so the plain check is enough.
  auto plain = validate(ntd.as_tree_decomposition(), g);
  out.insert(out.end(), plain.begin(), plain.end());
  return out;
}

/// Min-degree elimination ordering (ties to the lowest vertex id). Eliminating v
/// produces the bag {v} plus its current neighbours, after which the
/// neighbourhood is turned into a clique. Node i of the result is the bag of the
/// i-th eliminated vertex; the last bag is the root.
inline TreeDecomposition heuristic_decomposition(const Graph& g) {
  const std::size_t n = g.vertex_count();
  TreeDecomposition td;
  if (n == 0) return td;

  std::vector<std::set<VertexId>> adj(n);
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  std::vector<bool> eliminated(n, false);
  std::vector<std::size_t> position(n, 0);
  std::vector<VertexId> order;
  order.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    VertexId pick = n;
    for (VertexId v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      if (pick == n || adj[v].size() < adj[pick].size()) pick = v;
    }
    std::vector<VertexId> bag(adj[pick].begin(), adj[pick].end());
    bag.insert(std::upper_bound(bag.begin(), bag.end(), pick), pick);
    td.bags.push_back(std::move(bag));
    for (VertexId a : adj[pick])
      for (VertexId b : adj[pick])
        if (a != b) adj[a].insert(b);
    for (VertexId a : adj[pick]) adj[a].erase(pick);
    eliminated[pick] = true;
    position[pick] = step;
    order.push_back(pick);
  }

  td.root = n - 1;
  for (std::size_t step = 0; step + 1 < n; ++step) {
    VertexId v = order[step];
    // Parent bag: the earliest-eliminated vertex among v's neighbours at elimination time.
    std::size_t parent = n;
    for (VertexId w : td.bags[step])
      if (w != v) parent = std::min(parent, position[w]);
    if (parent == n) parent = td.root;  // last vertex of its component: hang it off the global root
    td.tree_edges.emplace_back(parent, step);
  }
  return td;
}

namespace detail {

class NiceBuilder {
 public:
  explicit NiceBuilder(NiceTreeDecomposition& out) : out_(out) {}

  NodeId leaf(VertexId v) { return add({NodeKind::Leaf, {v}, v, {}}); }

  NodeId introduce(NodeId child, VertexId v) {
    std::vector<VertexId> bag = out_.nodes[child].bag;
    bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
    return add({NodeKind::Introduce, std::move(bag), v, {child}});
  }

  NodeId forget(NodeId child, VertexId v) {
    std::vector<VertexId> bag = out_.nodes[child].bag;
    std::erase(bag, v);
    return add({NodeKind::Forget, std::move(bag), v, {child}});
  }

  NodeId join(NodeId left, NodeId right) {
    return add({NodeKind::Join, out_.nodes[left].bag, 0, {left, right}});
  }

  /// Forget everything not in `target`, then introduce what is missing.
  NodeId morph(NodeId from, const std::vector<VertexId>& target) {
    std::vector<VertexId> current = out_.nodes[from].bag;
    for (VertexId v : current)
      if (!bag_contains(target, v)) from = forget(from, v);
    for (VertexId v : target)
      if (!bag_contains(current, v)) from = introduce(from, v);
    return from;
  }

 private:
  NodeId add(NiceNode node) {
    out_.nodes.push_back(std::move(node));
    return out_.nodes.size() - 1;
  }

  NiceTreeDecomposition& out_;
};

}  // namespace detail

/// Converts a valid decomposition into nice form of the same width, rooted at
/// td.root. Leaves are singleton bags grown by introduce chains; each tree edge
/// becomes a forget chain followed by an introduce chain; nodes with several
/// children get a left-deep spine of join nodes. Empty-bag leaves are dropped.
inline NiceTreeDecomposition to_nice(const TreeDecomposition& td, const Graph& g) {
  if (auto problems = validate(td, g); !problems.empty())
    throw InputError("cannot convert an invalid tree decomposition: " + describe(problems.front()));
  NiceTreeDecomposition out;
  if (td.bags.empty()) return out;

  auto children = *detail::orient_tree(td.bags.size(), td.tree_edges, td.root);
  std::vector<std::vector<VertexId>> bags = td.bags;
  for (auto& bag : bags) {
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
  }

  // Drop subtrees whose bags are all empty.
  std::vector<bool> useful(bags.size(), false);
  {
    std::vector<NodeId> order{td.root};
    for (std::size_t h = 0; h < order.size(); ++h)
      for (NodeId c : children[order[h]]) order.push_back(c);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      NodeId i = *it;
      useful[i] = !bags[i].empty() || std::any_of(children[i].begin(), children[i].end(),
                                                  [&](NodeId c) { return useful[c]; });
    }
  }
  if (!useful[td.root]) return out;

  detail::NiceBuilder build(out);
  // Iterative post-order so deep (path-like) decompositions do not exhaust the stack.
  std::vector<NodeId> built(bags.size(), 0);
  std::vector<std::pair<NodeId, std::size_t>> stack{{td.root, 0}};
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < children[node].size()) {
      NodeId c = children[node][next++];
      if (useful[c]) stack.emplace_back(c, 0);
      continue;
    }
    const auto& bag = bags[node];
    std::vector<NodeId> branches;
    for (NodeId c : children[node])
      if (useful[c]) branches.push_back(build.morph(built[c], bag));
    if (branches.empty()) {
      NodeId top = build.leaf(bag.front());
      for (std::size_t k = 1; k < bag.size(); ++k) top = build.introduce(top, bag[k]);
      branches.push_back(top);
    }
    NodeId top = branches.front();
    for (std::size_t k = 1; k < branches.size(); ++k) top = build.join(top, branches[k]);
    built[node] = top;
    stack.pop_back();
  }
  out.root = built[td.root];
  return out;
}

}  // namespace mint
