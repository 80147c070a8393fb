#include <gtest/gtest.h>

#include <random>

#include "mint/dpsolver.hpp"
#include "mint/generators.hpp"
#include "mint/interdiction.hpp"
#include "mint/testing/oracles.hpp"

using namespace mint;

namespace {

using Profiles = std::vector<std::vector<Weight>>;

NiceNode node(NodeKind kind, std::vector<VertexId> bag, VertexId v, std::vector<NodeId> children) {
  return NiceNode{kind, std::move(bag), v, std::move(children)};
}

// leaf {0} -> introduce 1 -> forget 1 -> forget 0
NiceTreeDecomposition single_edge_chain() {
  NiceTreeDecomposition ntd;
  ntd.nodes = {node(NodeKind::Leaf, {0}, 0, {}), node(NodeKind::Introduce, {0, 1}, 1, {0}),
               node(NodeKind::Forget, {0}, 1, {1}), node(NodeKind::Forget, {}, 0, {2})};
  ntd.root = 3;
  return ntd;
}

// Two copies of (leaf {0} -> introduce 1) joined on {0, 1}, then forgotten.
NiceTreeDecomposition single_edge_join() {
  NiceTreeDecomposition ntd;
  ntd.nodes = {node(NodeKind::Leaf, {0}, 0, {}),        node(NodeKind::Introduce, {0, 1}, 1, {0}),
               node(NodeKind::Leaf, {0}, 0, {}),        node(NodeKind::Introduce, {0, 1}, 1, {2}),
               node(NodeKind::Join, {0, 1}, 0, {1, 3}), node(NodeKind::Forget, {0}, 1, {4}),
               node(NodeKind::Forget, {}, 0, {5})};
  ntd.root = 6;
  return ntd;
}

}  // namespace

TEST(Leaf, AllZeroProfileAtEveryBudget) {
  Instance inst(Graph(2, {{0, 1, 3, 2}}), 3);
  auto tables = DPSolver(inst, single_edge_chain()).run(true);
  for (Weight b = 0; b <= 3; ++b) EXPECT_EQ(tables[0]->profiles_at(b), (Profiles{{0, 0}}));
  Instance zero(Graph(2, {{0, 1, 3, 2}}), 0);
  EXPECT_EQ(DPSolver(zero, single_edge_chain()).run(true)[0]->profiles_at(0), (Profiles{{0, 0}}));
}

TEST(Introduce, EdgeWithoutBudget) {
  Instance inst(Graph(2, {{0, 1, 3, 2}}), 2);
  auto tables = DPSolver(inst, single_edge_chain()).run(true);
  EXPECT_EQ(tables[1]->profiles_at(0), (Profiles{{3, 0, 0, 0}}));
}

TEST(Introduce, EdgeWithBudgetAddsZeroProfile) {
  Instance inst(Graph(2, {{0, 1, 3, 2}}), 2);
  auto tables = DPSolver(inst, single_edge_chain()).run(true);
  EXPECT_EQ(tables[1]->profiles_at(1), (Profiles{{3, 0, 0, 0}}));
  EXPECT_EQ(tables[1]->profiles_at(2), (Profiles{{0, 0, 0, 0}, {3, 0, 0, 0}}));
}

TEST(Introduce, IsolatedVertexCopiesChild) {
  Instance inst(Graph(2), 1);
  auto tables = DPSolver(inst, single_edge_chain()).run(true);
  EXPECT_EQ(tables[1]->profiles_at(1), (Profiles{{0, 0, 0, 0}}));
}

TEST(Forget, RestrictsProfile) {
  Instance inst(Graph(2, {{0, 1, 3, 2}}), 2);
  auto tables = DPSolver(inst, single_edge_chain()).run(true);
  EXPECT_EQ(tables[2]->profiles_at(0), (Profiles{{3, 0}}));
  EXPECT_EQ(tables[3]->profiles_at(0), (Profiles{{3}}));
  EXPECT_EQ(tables[3]->profiles_at(2), (Profiles{{0}, {3}}));
}

TEST(Join, LiteralRecurrenceOnSingletonBag) {
  EXPECT_EQ(mint::testing::literal_join({3, 0}, {2, 0}, 1), (std::vector<Weight>{3, 0}));
}

TEST(Join, FullBagIsSumOfChildren) {
  auto joined = mint::testing::literal_join({5, 4, 3, 1}, {2, 2, 1, 1}, 2);
  EXPECT_EQ(joined.back(), 2);
}

// A bag-internal edge lies below both join children. Removing it must be paid
// for once, and both sides must agree that it is gone.
TEST(Join, SharedEdgeIsRemovedOnceOnBothSides) {
  Instance inst(Graph(2, {{0, 1, 1, 1}}), 1);
  auto s = solve_dp(inst, single_edge_join());
  EXPECT_EQ(s.value, 0);
  EXPECT_EQ(s.interdiction_set, std::vector<EdgeId>{0});
  Instance broke(Graph(2, {{0, 1, 1, 1}}), 0);
  EXPECT_EQ(solve_dp(broke, single_edge_join()).value, 1);
}

TEST(Join, ZeroProfileIsIdentity) {
  // Second child sees no edges, so the join reproduces the first child's table.
  Graph g(3, {{0, 1, 2, 1}});
  NiceTreeDecomposition ntd;
  ntd.nodes = {node(NodeKind::Leaf, {0}, 0, {}),       node(NodeKind::Introduce, {0, 1}, 1, {0}),
               node(NodeKind::Leaf, {0}, 0, {}),       node(NodeKind::Introduce, {0, 2}, 2, {2}),
               node(NodeKind::Forget, {0}, 2, {3}),     node(NodeKind::Introduce, {0, 1}, 1, {4}),
               node(NodeKind::Join, {0, 1}, 0, {1, 5}), node(NodeKind::Forget, {0}, 1, {6}),
               node(NodeKind::Forget, {}, 0, {7})};
  ntd.root = 8;
  Instance inst(g, 1);
  auto tables = DPSolver(inst, ntd).run(true);
  for (Weight b = 0; b <= 1; ++b) EXPECT_EQ(tables[6]->profiles_at(b), tables[1]->profiles_at(b));
}

TEST(SolveDp, PathFour) {
  Instance inst(gen::path(4), 1);
  auto ntd = to_nice(gen::path_decomposition(4), inst.graph());
  auto s = solve_dp(inst, ntd);
  EXPECT_EQ(s.value, 1);
  EXPECT_EQ(check_solution(inst, s), "");
  EXPECT_TRUE(decide_dp(inst, ntd, 1));
  EXPECT_FALSE(decide_dp(inst, ntd, 0));
}

TEST(SolveDp, ZeroBudgetAndFullBudget) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 30; ++t) {
    Graph g = mint::testing::random_multigraph(6, 8, rng, 4);
    auto ntd = default_nice_decomposition(g);
    EXPECT_EQ(solve_dp(Instance(g, 0), ntd).value, matching_value(g));
    EXPECT_TRUE(decide_dp(Instance(g, 0), ntd, matching_value(g)));
    EXPECT_EQ(solve_dp(Instance(g, g.total_cost()), ntd).value, 0);
  }
}

TEST(SolveDp, EmptyGraphs) {
  EXPECT_EQ(solve_dp(Instance(Graph(0), 0), NiceTreeDecomposition{}).value, 0);
  Graph lonely(3);
  EXPECT_EQ(solve_dp(Instance(lonely, 2), default_nice_decomposition(lonely)).value, 0);
}

TEST(SolveDp, RejectsInvalidDecomposition) {
  Instance inst(gen::path(4), 1);
  auto ntd = to_nice(gen::path_decomposition(3), gen::path(3));
  EXPECT_THROW(solve_dp(inst, ntd), InputError);
}

TEST(SolveDp, BagGuard) {
  Graph k(6);
  for (VertexId u = 0; u < 6; ++u)
    for (VertexId v = u + 1; v < 6; ++v) k.add_edge(u, v);
  EXPECT_THROW(solve_dp(Instance(k, 1), default_nice_decomposition(k), DPOptions{false, 4}), SizeError);
}

TEST(Prune, DominatedProfileDropped) {
  DPTable t(0, {0}, {}, 1);
  t.insert(ProfileEntry{0, {3, 0}, 0, {}});
  t.insert(ProfileEntry{0, {0, 0}, 0, {}});
  auto p = prune_dominated(t);
  ASSERT_EQ(p.size(), 1U);
  EXPECT_EQ(p.entries()[0].values, (std::vector<Weight>{0, 0}));
}

TEST(Prune, SingletonUnchanged) {
  DPTable t(0, {0}, {}, 1);
  t.insert(ProfileEntry{0, {3, 0}, 1, {0}});
  EXPECT_EQ(prune_dominated(t).entries()[0].values, t.entries()[0].values);
}

TEST(Table, BudgetSetsAreNested) {
  std::mt19937_64 rng(5);
  Graph g = mint::testing::random_multigraph(6, 9, rng, 3);
  Instance inst(g, 5);
  auto tables = DPSolver(inst, default_nice_decomposition(g)).run(true);
  for (const auto& t : tables)
    for (Weight b = 0; b < 5; ++b) {
      auto small = t->profiles_at(b), big = t->profiles_at(b + 1);
      EXPECT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end()));
    }
}

// Property: every node's table equals the brute-force profile set of its
// subgraph for every budget.
TEST(DpProperty, TablesMatchDefinition) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 40; ++t) {
    Graph g = mint::testing::random_multigraph(2 + rng() % 3, rng() % 5, rng, 2);
    std::vector<EdgeId> fixed;
    for (EdgeId id = 0; id < g.edge_count(); ++id)
      if (rng() % 4 == 0) fixed.push_back(id);
    Instance inst(g, 1 + static_cast<Weight>(rng() % 3), fixed);
    auto ntd = to_nice(mint::testing::redundant_decomposition(g, rng, 2), g);
    auto tables = DPSolver(inst, ntd).run(true);
    auto scopes = subgraph_scopes(ntd, g);
    for (NodeId i = 0; i < ntd.nodes.size(); ++i)
      for (Weight b = 0; b <= inst.budget(); ++b)
        ASSERT_EQ(tables[i]->profiles_at(b), mint::testing::brute_force_profile_set(inst.with_budget(b), scopes[i], b))
            << "trial " << t << " node " << i << " budget " << b;
  }
}

// Property: DP agrees with brute force with and without pruning, and every
// recovered solution is feasible and reproduces the value.
TEST(DpProperty, AgreesWithBruteForce) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 150; ++t) {
    Graph g = mint::testing::random_multigraph(2 + rng() % 6, rng() % 10, rng, 3);
    std::vector<EdgeId> fixed;
    for (EdgeId id = 0; id < g.edge_count(); ++id)
      if (rng() % 6 == 0) fixed.push_back(id);
    Instance inst(g, static_cast<Weight>(rng() % 8), fixed);
    auto ntd = to_nice(mint::testing::redundant_decomposition(g, rng, rng() % 3), g);
    const Weight expect = solve_brute_force(inst).value;
    for (bool prune : {false, true}) {
      Solution s = solve_dp(inst, ntd, DPOptions{prune});
      ASSERT_EQ(s.value, expect) << "trial " << t << " prune " << prune;
      ASSERT_EQ(check_solution(inst, s), "") << "trial " << t;
    }
    auto per_budget = solve_dp_budgets(inst, ntd);
    ASSERT_EQ(per_budget.size(), static_cast<std::size_t>(inst.budget()) + 1);
    for (Weight b = 0; b <= inst.budget(); ++b)
      ASSERT_EQ(per_budget[b].value, solve_brute_force(inst.with_budget(b)).value);
  }
}

TEST(DpProperty, Deterministic) {
  std::mt19937_64 rng(9);
  Graph g = gen::ktree(2, 14, rng, {false, 3});
  Instance inst(g, 4);
  auto ntd = default_nice_decomposition(g);
  EXPECT_EQ(solve_dp(inst, ntd), solve_dp(inst, ntd));
}
