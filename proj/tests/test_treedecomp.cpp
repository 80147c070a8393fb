#include <gtest/gtest.h>

#include <random>

#include "mint/generators.hpp"
#include "mint/testing/oracles.hpp"
#include "mint/treedecomp.hpp"

using namespace mint;

namespace {

TreeDecomposition p4_decomposition() { return gen::path_decomposition(4); }

bool has_kind(const std::vector<Violation>& vs, ViolationKind k) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == k; });
}

Graph complete(std::size_t n) {
  Graph g(n);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

// Structural checks shared by the nice-form tests.
void expect_nice(const NiceTreeDecomposition& ntd, const Graph& g) {
  auto problems = validate_nice(ntd, g);
  ASSERT_TRUE(problems.empty()) << describe(problems.front());
  for (const NiceNode& n : ntd.nodes)
    if (n.kind == NodeKind::Leaf) EXPECT_EQ(n.bag.size(), 1U);
}

}  // namespace

TEST(Width, Examples) {
  TreeDecomposition single{{{0, 1}}, {}, 0};
  EXPECT_EQ(width(single), 1);
  EXPECT_EQ(width(p4_decomposition()), 1);
  TreeDecomposition k4{{{0, 1, 2, 3}}, {}, 0};
  EXPECT_EQ(width(k4), 3);
}

TEST(Validate, PathDecompositionIsValid) { EXPECT_TRUE(validate(p4_decomposition(), gen::path(4)).empty()); }

TEST(Validate, MissingMiddleBagLeavesEdgeUncovered) {
  TreeDecomposition td{{{0, 1}, {2, 3}}, {{0, 1}}, 0};
  auto vs = validate(td, gen::path(4));
  ASSERT_EQ(vs.size(), 1U);
  EXPECT_EQ(vs[0].kind, ViolationKind::EdgeUncovered);
  EXPECT_EQ(vs[0].subject, 1U);
}

TEST(Validate, DetectsDisconnectedOccurrences) {
  TreeDecomposition td{{{0, 1}, {1, 2}, {0, 2}}, {{0, 1}, {1, 2}}, 0};
  Graph tri(3, {{0, 1}, {1, 2}, {2, 0}});
  auto vs = validate(td, tri);
  EXPECT_TRUE(has_kind(vs, ViolationKind::Disconnected));
}

TEST(Validate, DetectsUncoveredAndOutOfRangeVertices) {
  TreeDecomposition td{{{0, 7}}, {}, 0};
  auto vs = validate(td, Graph(2));
  EXPECT_TRUE(has_kind(vs, ViolationKind::VertexOutOfRange));
  EXPECT_TRUE(has_kind(vs, ViolationKind::VertexUncovered));
}

TEST(Validate, DetectsNonTrees) {
  TreeDecomposition cyc{{{0}, {0}, {0}}, {{0, 1}, {1, 2}, {2, 0}}, 0};
  EXPECT_TRUE(has_kind(validate(cyc, Graph(1)), ViolationKind::NotATree));
  TreeDecomposition forest{{{0}, {0}}, {}, 0};
  EXPECT_TRUE(has_kind(validate(forest, Graph(1)), ViolationKind::NotATree));
}

TEST(Heuristic, TreesGetWidthOne) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + rng() % 20;
    Graph g(n);
    for (VertexId v = 1; v < n; ++v) g.add_edge(static_cast<VertexId>(rng() % v), v);
    auto td = heuristic_decomposition(g);
    EXPECT_TRUE(validate(td, g).empty());
    EXPECT_EQ(width(td), 1);
  }
}

TEST(Heuristic, SingleVertex) {
  auto td = heuristic_decomposition(Graph(1));
  ASSERT_EQ(td.bags.size(), 1U);
  EXPECT_EQ(td.bags[0], std::vector<VertexId>{0});
  EXPECT_EQ(width(td), 0);
}

TEST(Heuristic, CycleFourHasWidthTwo) {
  std::mt19937_64 rng(0);
  Graph c4 = gen::cycle(4, rng);
  auto td = heuristic_decomposition(c4);
  EXPECT_TRUE(validate(td, c4).empty());
  EXPECT_EQ(width(td), 2);
}

TEST(Heuristic, CompleteGraph) {
  auto td = heuristic_decomposition(complete(5));
  EXPECT_EQ(width(td), 4);
}

TEST(Heuristic, KTreeWidthBoundedByK) {
  std::mt19937_64 rng(21);
  for (std::size_t k = 1; k <= 4; ++k) {
    Graph g = gen::ktree(k, 25, rng);
    auto td = heuristic_decomposition(g);
    EXPECT_TRUE(validate(td, g).empty());
    EXPECT_EQ(width(td), static_cast<std::int64_t>(k));
  }
}

TEST(Nice, SingleBagBecomesLeaf) {
  TreeDecomposition td{{{0}}, {}, 0};
  auto ntd = to_nice(td, Graph(1));
  expect_nice(ntd, Graph(1));
  ASSERT_GE(ntd.nodes.size(), 1U);
  EXPECT_EQ(ntd.nodes[ntd.postorder().front()].kind, NodeKind::Leaf);
}

TEST(Nice, TwoBagsKeepWidth) {
  TreeDecomposition td{{{0, 1}, {1, 2}}, {{0, 1}}, 0};
  Graph g = gen::path(3);
  auto ntd = to_nice(td, g);
  expect_nice(ntd, g);
  EXPECT_EQ(width(ntd), 1);
}

TEST(Nice, RejectsInvalidInput) {
  TreeDecomposition td{{{0, 1}, {2, 3}}, {{0, 1}}, 0};
  EXPECT_THROW(to_nice(td, gen::path(4)), InputError);
}

TEST(Nice, ShapeViolationsAreReported) {
  Graph g = gen::path(2);
  auto ntd = to_nice(heuristic_decomposition(g), g);
  for (NiceNode& n : ntd.nodes)
    if (n.kind == NodeKind::Introduce) {
      n.kind = NodeKind::Forget;
      break;
    }
  EXPECT_TRUE(has_kind(validate_nice(ntd, g), ViolationKind::NodeShape));
}

TEST(Nice, PostorderVisitsChildrenFirst) {
  std::mt19937_64 rng(4);
  Graph g = gen::ktree(2, 12, rng);
  auto ntd = to_nice(heuristic_decomposition(g), g);
  std::vector<bool> seen(ntd.nodes.size(), false);
  for (NodeId i : ntd.postorder()) {
    for (NodeId c : ntd.nodes[i].children) EXPECT_TRUE(seen[c]);
    seen[i] = true;
  }
  EXPECT_EQ(ntd.postorder().back(), ntd.root);
}

// Property: nice conversion of heuristic and padded decompositions is valid
// and preserves width.
TEST(NiceProperty, ValidAndSameWidth) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 9;
    Graph g = mint::testing::random_multigraph(n, rng() % 14, rng, 2);
    auto td = mint::testing::redundant_decomposition(g, rng, rng() % 4);
    ASSERT_TRUE(validate(td, g).empty());
    auto ntd = to_nice(td, g);
    expect_nice(ntd, g);
    EXPECT_EQ(width(ntd), width(td));
  }
}

TEST(NiceProperty, Deterministic) {
  std::mt19937_64 rng(6);
  Graph g = gen::ktree(3, 15, rng);
  EXPECT_EQ(to_nice(heuristic_decomposition(g), g).nodes, to_nice(heuristic_decomposition(g), g).nodes);
}
