#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "mint/generators.hpp"
#include "mint/io.hpp"
#include "mint/testing/oracles.hpp"

using namespace mint;

namespace {

Instance parse(const std::string& text) {
  std::istringstream in(text);
  return io::read_instance(in);
}

std::size_t parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    io::read_instance(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

io::ParsedDecomposition parse_td(const std::string& text) {
  std::istringstream in(text);
  return io::parse_decomposition(in);
}

}  // namespace

TEST(InstanceFormat, ParsesPathWithCommentsAndFixedEdge) {
  Instance inst = parse("# a path\np mint 4 3 1\ne 0 1 1 1\n\ne 1 2 2 3\ne 2 3 1 1\nn 1\n");
  EXPECT_EQ(inst.graph().vertex_count(), 4U);
  EXPECT_EQ(inst.graph().edge(1).weight, 2);
  EXPECT_EQ(inst.graph().edge(1).cost, 3);
  EXPECT_EQ(inst.budget(), 1);
  EXPECT_EQ(inst.non_removable(), std::vector<EdgeId>{1});
}

TEST(InstanceFormat, ErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line("p mint 2 1 0\ne 0 5 1 1\n"), 2U);
  EXPECT_EQ(parse_error_line("p mint 2 1 0\n# note\ne 0 1 x 1\n"), 3U);
  EXPECT_EQ(parse_error_line("p graph 2 1 0\n"), 1U);
  EXPECT_EQ(parse_error_line("p mint 2 1 0\ne 0 1 1 1\nz 3\n"), 3U);
  EXPECT_EQ(parse_error_line("p mint 2 1 -1\n"), 1U);
  EXPECT_EQ(parse_error_line("p mint 2 1 0\ne 0 1 1 -2\n"), 2U);
  EXPECT_NE(parse_error_line("p mint 2 2 0\ne 0 1 1 1\n"), 0U);
  EXPECT_NE(parse_error_line("p mint 2 1 0\ne 0 1 1 1\nn 4\n"), 0U);
  EXPECT_NE(parse_error_line(""), 0U);
}

TEST(InstanceFormat, ExtrasOnlyWhenAllowed) {
  std::istringstream in("p mint 3 0 0\nr 3\n");
  auto parsed = io::parse_instance(in, {"r"});
  EXPECT_EQ(parsed.extras.at("r"), std::vector<std::int64_t>{3});
  EXPECT_NE(parse_error_line("p mint 3 0 0\nr 3\n"), 0U);
}

TEST(InstanceFormat, RoundTrip) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 100; ++t) {
    Graph g = mint::testing::random_multigraph(1 + rng() % 8, rng() % 12, rng, 9);
    std::vector<EdgeId> fixed;
    for (EdgeId id = 0; id < g.edge_count(); ++id)
      if (rng() % 3 == 0) fixed.push_back(id);
    Instance inst(g, static_cast<Weight>(rng() % 10), fixed);
    EXPECT_EQ(parse(io::to_text(inst)), inst);
  }
}

TEST(DecompositionFormat, PlainRoundTrip) {
  std::mt19937_64 rng(2);
  Graph g = gen::ktree(2, 10, rng);
  TreeDecomposition td = heuristic_decomposition(g);
  std::ostringstream out;
  io::write_decomposition(out, td);
  auto back = parse_td(out.str());
  EXPECT_EQ(back.plain, td);
  EXPECT_FALSE(back.nice.has_value());
}

TEST(DecompositionFormat, NiceRoundTrip) {
  std::mt19937_64 rng(3);
  Graph g = gen::ktree(3, 12, rng);
  NiceTreeDecomposition ntd = to_nice(heuristic_decomposition(g), g);
  std::ostringstream out;
  io::write_nice_decomposition(out, ntd);
  auto back = parse_td(out.str());
  ASSERT_TRUE(back.nice.has_value());
  EXPECT_EQ(back.nice->nodes, ntd.nodes);
  EXPECT_EQ(back.nice->root, ntd.root);
}

TEST(DecompositionFormat, Errors) {
  EXPECT_THROW(parse_td("td 2 0\nb 0 0 1\nb 1 1 2\n"), ParseError);
  EXPECT_THROW(parse_td("td 1 3\n"), ParseError);
  EXPECT_THROW(parse_td("td 1 0\nb 0 0\nk 0 bogus\n"), ParseError);
  EXPECT_THROW(parse_td("td 2 0\nb 0 0\nb 1 0\nt 0 1\nk 0 leaf\n"), ParseError);
  try {
    parse_td("td 1 0\nb 0 0\nb 0 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3U);
  }
}

TEST(KnapsackFormat, RoundTripAndErrors) {
  KnapsackInstance k{{{2, 4}, {3, 5}}, 3, 5};
  std::ostringstream out;
  io::write_knapsack(out, k);
  EXPECT_EQ(out.str(), "k 2 3 5\ni 2 4\ni 3 5\n");
  std::istringstream in(out.str());
  auto back = io::parse_knapsack(in);
  EXPECT_EQ(back.items.size(), 2U);
  EXPECT_EQ(back.items[1].value, 5);
  EXPECT_EQ(back.capacity, 3);
  EXPECT_EQ(back.target, 5);
  std::istringstream bad("k 1 3 5\ni 2\n");
  EXPECT_THROW(io::parse_knapsack(bad), ParseError);
}

TEST(SolutionFormat, Lines) {
  Solution s{{0}, 1, Matching{{2}}};
  std::ostringstream out;
  io::write_solution(out, s);
  EXPECT_EQ(out.str(), "value 1\ninterdict 0\nwitness 2\n");
  std::ostringstream brief;
  io::write_solution(brief, s, false);
  EXPECT_EQ(brief.str(), "value 1\n");
}
