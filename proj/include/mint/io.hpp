#pragma once

#include <charconv>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mint/error.hpp"
#include "mint/interdiction.hpp"
#include "mint/reductions.hpp"
#include "mint/treedecomp.hpp"

namespace mint::io {

namespace detail {

/// Whitespace-split line reader that skips blank and `#` comment lines.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      std::istringstream ss(line);
      tokens_.clear();
      for (std::string tok; ss >> tok;) tokens_.push_back(tok);
      if (tokens_.empty() || tokens_[0][0] == '#') continue;
      return true;
    }
    return false;
  }

  std::size_t line() const { return line_no_; }
  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::string& keyword() const { return tokens_[0]; }

  void expect_count(std::size_t n) const {
    if (tokens_.size() != n)
      fail("'" + keyword() + "' expects " + std::to_string(n - 1) + " fields, got " +
           std::to_string(tokens_.size() - 1));
  }

  std::int64_t integer(std::size_t idx) const {
    if (idx >= tokens_.size()) fail("missing field " + std::to_string(idx));
    const std::string& tok = tokens_[idx];
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) fail("not an integer: '" + tok + "'");
    return value;
  }

  std::size_t index(std::size_t idx) const {
    std::int64_t v = integer(idx);
    if (v < 0) fail("negative index: " + std::to_string(v));
    return static_cast<std::size_t>(v);
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_no_, what); }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
  std::vector<std::string> tokens_;
};

}  // namespace detail

/// An instance plus any extra directive lines the caller allowed (e.g. `r 3`).
struct ParsedInstance {
  Instance instance;
  std::map<std::string, std::vector<std::int64_t>> extras;
};

/// Reads `p mint <n> <m> <B>`, then m lines `e <u> <v> <w> <c>`, optional
/// `n <edge>` lines; `#` starts a comment line.
inline ParsedInstance parse_instance(std::istream& in, const std::set<std::string>& allowed_extras = {}) {
  detail::LineReader r(in);
  if (!r.next()) throw ParseError(1, "empty input, expected 'p mint <n> <m> <B>'");
  if (r.keyword() != "p" || r.tokens().size() != 5 || r.tokens()[1] != "mint")
    r.fail("expected header 'p mint <n> <m> <B>'");
  const std::size_t n = r.index(2);
  const std::size_t m = r.index(3);
  const std::int64_t budget = r.integer(4);
  if (budget < 0) r.fail("budget must be non-negative");

  Graph g(n);
  std::vector<EdgeId> fixed;
  ParsedInstance out;
  while (r.next()) {
    const std::string& kw = r.keyword();
    try {
      if (kw == "e") {
        r.expect_count(5);
        if (g.edge_count() == m) r.fail("more than " + std::to_string(m) + " edge lines");
        g.add_edge(r.index(1), r.index(2), r.integer(3), r.integer(4));
      } else if (kw == "n") {
        r.expect_count(2);
        fixed.push_back(r.index(1));
      } else if (allowed_extras.contains(kw)) {
        auto& vals = out.extras[kw];
        for (std::size_t k = 1; k < r.tokens().size(); ++k) vals.push_back(r.integer(k));
      } else {
        r.fail("unknown line type '" + kw + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      r.fail(e.what());
    }
  }
  if (g.edge_count() != m)
    throw ParseError(r.line(), "header announces " + std::to_string(m) + " edges, found " +
                                   std::to_string(g.edge_count()));
  for (EdgeId id : fixed)
    if (id >= m) throw ParseError(r.line(), "non-removable edge " + std::to_string(id) + " out of range");
  out.instance = Instance(std::move(g), budget, std::move(fixed));
  return out;
}

inline Instance read_instance(std::istream& in) { return parse_instance(in).instance; }

inline void write_instance(std::ostream& out, const Instance& inst) {
  const Graph& g = inst.graph();
  out << "p mint " << g.vertex_count() << ' ' << g.edge_count() << ' ' << inst.budget() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << ' ' << e.weight << ' ' << e.cost << '\n';
  for (EdgeId id : inst.non_removable()) out << "n " << id << '\n';
}

inline std::string to_text(const Instance& inst) {
  std::ostringstream ss;
  write_instance(ss, inst);
  return ss.str();
}

/// A plain decomposition, plus the nice view when the file carried `k` lines.
struct ParsedDecomposition {
  TreeDecomposition plain;
  std::optional<NiceTreeDecomposition> nice;
};

/// `td <num_nodes> <root>`, `b <id> <v>...`, `t <id1> <id2>` and, for nice
/// decompositions, `k <id> leaf|intro <v>|forget <v>|join`. For nice files the
/// `t` lines are read as parent-child pairs in child order.
inline ParsedDecomposition parse_decomposition(std::istream& in) {
  detail::LineReader r(in);
  if (!r.next()) throw ParseError(1, "empty input, expected 'td <nodes> <root>'");
  if (r.keyword() != "td") r.fail("expected header 'td <num_nodes> <root>'");
  r.expect_count(3);
  const std::size_t count = r.index(1);
  const std::size_t root = r.index(2);
  if (count > 0 && root >= count) r.fail("root out of range");

  ParsedDecomposition out;
  out.plain.root = root;
  out.plain.bags.resize(count);
  std::vector<bool> bag_seen(count, false);
  std::vector<std::optional<std::pair<NodeKind, VertexId>>> kinds(count);
  bool any_kind = false;
  auto node_index = [&](std::size_t idx) {
    std::size_t id = r.index(idx);
    if (id >= count) r.fail("node id " + std::to_string(id) + " out of range");
    return id;
  };
  while (r.next()) {
    const std::string& kw = r.keyword();
    if (kw == "b") {
      std::size_t id = node_index(1);
      if (bag_seen[id]) r.fail("duplicate bag line for node " + std::to_string(id));
      bag_seen[id] = true;
      for (std::size_t k = 2; k < r.tokens().size(); ++k) out.plain.bags[id].push_back(r.index(k));
      std::sort(out.plain.bags[id].begin(), out.plain.bags[id].end());
    } else if (kw == "t") {
      r.expect_count(3);
      out.plain.tree_edges.emplace_back(node_index(1), node_index(2));
    } else if (kw == "k") {
      std::size_t id = node_index(1);
      if (r.tokens().size() < 3) r.fail("missing node kind");
      const std::string& kind = r.tokens()[2];
      any_kind = true;
      if (kind == "leaf") {
        r.expect_count(3);
        kinds[id] = std::pair{NodeKind::Leaf, VertexId{0}};
      } else if (kind == "join") {
        r.expect_count(3);
        kinds[id] = std::pair{NodeKind::Join, VertexId{0}};
      } else if (kind == "intro" || kind == "forget") {
        r.expect_count(4);
        kinds[id] = std::pair{kind == "intro" ? NodeKind::Introduce : NodeKind::Forget, r.index(3)};
      } else {
        r.fail("unknown node kind '" + kind + "'");
      }
    } else {
      r.fail("unknown line type '" + kw + "'");
    }
  }
  if (out.plain.tree_edges.size() + 1 != count && count > 0)
    throw ParseError(r.line(), "a tree on " + std::to_string(count) + " nodes needs " + std::to_string(count - 1) +
                                   " edges, found " + std::to_string(out.plain.tree_edges.size()));
  if (any_kind) {
    NiceTreeDecomposition nice;
    nice.root = root;
    nice.nodes.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      if (!kinds[i]) throw ParseError(r.line(), "node " + std::to_string(i) + " has no 'k' line");
      nice.nodes[i].kind = kinds[i]->first;
      nice.nodes[i].vertex = kinds[i]->second;
      nice.nodes[i].bag = out.plain.bags[i];
      if (kinds[i]->first == NodeKind::Leaf && !nice.nodes[i].bag.empty())
        nice.nodes[i].vertex = nice.nodes[i].bag.front();
    }
    for (auto [parent, child] : out.plain.tree_edges) nice.nodes[parent].children.push_back(child);
    out.nice = std::move(nice);
  }
  return out;
}

inline void write_decomposition(std::ostream& out, const TreeDecomposition& td) {
  out << "td " << td.bags.size() << ' ' << td.root << '\n';
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << i;
    for (VertexId v : td.bags[i]) out << ' ' << v;
    out << '\n';
  }
  for (auto [a, b] : td.tree_edges) out << "t " << a << ' ' << b << '\n';
}

inline void write_nice_decomposition(std::ostream& out, const NiceTreeDecomposition& ntd) {
  write_decomposition(out, ntd.as_tree_decomposition());
  for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
    const NiceNode& n = ntd.nodes[i];
    out << "k " << i << ' ' << to_string(n.kind);
    if (n.kind == NodeKind::Introduce || n.kind == NodeKind::Forget) out << ' ' << n.vertex;
    out << '\n';
  }
}

/// `k <n> <Z> <K>` followed by n lines `i <size> <value>`.
inline KnapsackInstance parse_knapsack(std::istream& in) {
  detail::LineReader r(in);
  if (!r.next()) throw ParseError(1, "empty input, expected 'k <n> <Z> <K>'");
  if (r.keyword() != "k") r.fail("expected header 'k <n> <Z> <K>'");
  r.expect_count(4);
  const std::size_t n = r.index(1);
  KnapsackInstance out;
  out.capacity = r.integer(2);
  out.target = r.integer(3);
  if (out.capacity < 0) r.fail("capacity must be non-negative");
  while (r.next()) {
    if (r.keyword() != "i") r.fail("unknown line type '" + r.keyword() + "'");
    r.expect_count(3);
    if (out.items.size() == n) r.fail("more than " + std::to_string(n) + " item lines");
    KnapsackItem item{r.integer(1), r.integer(2)};
    if (item.size < 0 || item.value < 0) r.fail("sizes and values must be non-negative");
    out.items.push_back(item);
  }
  if (out.items.size() != n)
    throw ParseError(r.line(), "header announces " + std::to_string(n) + " items, found " +
                                   std::to_string(out.items.size()));
  return out;
}

inline void write_knapsack(std::ostream& out, const KnapsackInstance& k) {
  out << "k " << k.items.size() << ' ' << k.capacity << ' ' << k.target << '\n';
  for (const KnapsackItem& it : k.items) out << "i " << it.size << ' ' << it.value << '\n';
}

/// `value <v>`, then `interdict <idx>...` and `witness <idx>...` when requested.
inline void write_solution(std::ostream& out, const Solution& s, bool with_sets = true) {
  out << "value " << s.value << '\n';
  if (!with_sets) return;
  out << "interdict";
  for (EdgeId id : s.interdiction_set) out << ' ' << id;
  out << "\nwitness";
  for (EdgeId id : s.witness.edges) out << ' ' << id;
  out << '\n';
}

}  // namespace mint::io
