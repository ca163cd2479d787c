#include "ucs/error.hpp"
#include "ucs/graph.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ucs;

namespace {

Bits bits_of(std::size_t width, std::initializer_list<std::size_t> set) {
  Bits b(width);
  for (auto i : set) b.set(i);
  return b;
}

}  // namespace

TEST(EdgeProbability, RangeAndDegeneracy) {
  EXPECT_THROW(EdgeProbability(-0.1), RangeError);
  EXPECT_THROW(EdgeProbability(1.5), RangeError);
  EXPECT_TRUE(EdgeProbability(0.0).degenerate());
  EXPECT_TRUE(EdgeProbability(1.0).degenerate());
  EXPECT_THROW(EdgeProbability(1.0).require_proper(), RangeError);
  EXPECT_DOUBLE_EQ(EdgeProbability(0.2).q(), 0.8);
}

TEST(Graph, ConstructorsRejectEmptySides) {
  EXPECT_THROW(BipartiteGraph(0, 3), ZeroSideError);
  EXPECT_THROW(BipartiteGraph(3, 0), ZeroSideError);
  EXPECT_THROW(BipartiteGraph(2, 2, {Bits(2)}), RangeError);
  EXPECT_THROW(BipartiteGraph(1, 2, {Bits(3)}), RangeError);
  EXPECT_THROW(sample_bipartite(0, 2, EdgeProbability(0.5), {}), ZeroSideError);
}

TEST(Sample, DegenerateProbabilities) {
  const auto full = sample_bipartite(3, 2, EdgeProbability(1.0), Seed{123, 4});
  EXPECT_EQ(full, BipartiteGraph::complete(3, 2));
  EXPECT_EQ(full.edge_count(), 6u);
  const auto empty = sample_bipartite(3, 2, EdgeProbability(0.0), Seed{9, 9});
  EXPECT_EQ(empty.edge_count(), 0u);
  EXPECT_TRUE(empty.edgeless());
}

TEST(Sample, Deterministic) {
  const EdgeProbability half(0.5);
  EXPECT_EQ(sample_bipartite(7, 9, half, Seed{1, 2}), sample_bipartite(7, 9, half, Seed{1, 2}));
  EXPECT_NE(sample_bipartite(7, 9, half, Seed{1, 2}), sample_bipartite(7, 9, half, Seed{1, 3}));
}

TEST(Sample, EdgeCountMeanAndPerPairFrequency) {
  const EdgeProbability half(0.5);
  const int trials = 10000;
  double total = 0;
  std::vector<int> per_pair(36, 0);
  for (int t = 0; t < trials; ++t) {
    const auto g = sample_bipartite(6, 6, half, Seed{0, static_cast<std::uint64_t>(t)});
    total += static_cast<double>(g.edge_count());
    for (std::size_t u = 0; u < 6; ++u)
      for (std::size_t v = 0; v < 6; ++v) per_pair[u * 6 + v] += g.has_edge(u, v);
  }
  // Mean of 36 fair coins: 18 with variance 9; the sample mean has sd 3/sqrt(T).
  EXPECT_NEAR(total / trials, 18.0, 3 * 3.0 / std::sqrt(trials));
  for (int c : per_pair) EXPECT_NEAR(c / double(trials), 0.5, 4 * std::sqrt(0.25 / trials));
}

TEST(SwapSides, InvolutionAndExamples) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto g = sample_bipartite(4, 7, EdgeProbability(0.4), Seed{s, 0});
    const auto h = swap_sides(g);
    EXPECT_EQ(swap_sides(h), g);
    EXPECT_EQ(h.edge_count(), g.edge_count());
    for (std::size_t u = 0; u < 4; ++u)
      for (std::size_t v = 0; v < 7; ++v) EXPECT_EQ(h.has_edge(v, u), g.has_edge(u, v));
  }
  EXPECT_EQ(swap_sides(BipartiteGraph::complete(3, 2)), BipartiteGraph::complete(2, 3));
  const BipartiteGraph path(2, 1, {bits_of(1, {0}), bits_of(1, {})});
  const auto t = swap_sides(path);
  EXPECT_EQ(t.m(), 1u);
  EXPECT_EQ(t.n(), 2u);
  EXPECT_EQ(t.edge_count(), 1u);
  EXPECT_TRUE(t.has_edge(0, 0));
}

TEST(InducedSubgraph, Examples) {
  const auto k32 = BipartiteGraph::complete(3, 2);
  EXPECT_EQ(induced_subgraph(k32, bits_of(3, {0, 1}), bits_of(2, {0})), BipartiteGraph::complete(2, 1));
  EXPECT_EQ(induced_subgraph(k32, bits_of(3, {0, 1, 2}), bits_of(2, {0, 1})), k32);
  const auto pm = BipartiteGraph::matching(4, 4);
  const auto split = induced_subgraph(pm, bits_of(4, {0, 1}), bits_of(4, {2, 3}));
  EXPECT_EQ(split.m(), 2u);
  EXPECT_TRUE(split.edgeless());
  EXPECT_THROW(induced_subgraph(k32, Bits(3), bits_of(2, {0})), ZeroSideError);
  EXPECT_THROW(induced_subgraph(k32, bits_of(2, {0}), bits_of(2, {0})), RangeError);
}

TEST(InducedSubgraph, NeverAddsEdges) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto g = sample_bipartite(6, 6, EdgeProbability(0.5), Seed{s, 1});
    const auto h = induced_subgraph(g, bits_of(6, {1, 3, 4}), bits_of(6, {0, 5}));
    EXPECT_LE(h.edge_count(), g.edge_count());
    EXPECT_EQ(h.has_edge(0, 1), g.has_edge(1, 5));
  }
}

TEST(GraphText, ParseExamples) {
  EXPECT_EQ(parse_graph("2 2\n10\n01\n"), BipartiteGraph::matching(2, 2));
  EXPECT_EQ(parse_graph("1 3\n111\n"), BipartiteGraph::complete(1, 3));
  EXPECT_EQ(parse_graph("1 3\r\n111\r\n"), BipartiteGraph::complete(1, 3));
  const std::string canonical = "3 4\n1010\n0000\n1111\n";
  EXPECT_EQ(serialize_graph(parse_graph(canonical)), canonical);
}

TEST(GraphText, RoundTripOfSamples) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto g = sample_bipartite(5, 8, EdgeProbability(0.3), Seed{s, 7});
    EXPECT_EQ(parse_graph(serialize_graph(g)), g);
  }
}

TEST(GraphText, DistinctParseErrors) {
  auto kind = [](std::string_view text) {
    try {
      parse_graph(text);
    } catch (const ParseError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "no error for " << text;
    return ParseErrorKind::MalformedSet;
  };
  EXPECT_EQ(kind("2\n10\n01\n"), ParseErrorKind::MalformedHeader);
  EXPECT_EQ(kind("x 2\n10\n01\n"), ParseErrorKind::MalformedHeader);
  EXPECT_EQ(kind("2 2\n10\n"), ParseErrorKind::WrongRowCount);
  EXPECT_EQ(kind("2 2\n10\n011\n"), ParseErrorKind::WrongRowWidth);
  EXPECT_EQ(kind("2 2\n10\n0a\n"), ParseErrorKind::IllegalCharacter);
}

TEST(GraphJson, Shape) {
  EXPECT_EQ(graph_to_json(BipartiteGraph::matching(2, 3)), R"({"m":2,"n":3,"rows":["100","010"]})");
}
