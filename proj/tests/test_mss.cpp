#include "oracles.hpp"
#include "ucs/error.hpp"
#include "ucs/mss.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace ucs;

namespace {

Bits bits_of(std::size_t width, std::initializer_list<std::size_t> set) {
  Bits b(width);
  for (auto i : set) b.set(i);
  return b;
}

std::set<oracle::VertexSet> as_masks(const std::vector<StableSet>& sets) {
  std::set<oracle::VertexSet> out;
  for (const auto& s : sets) out.insert({static_cast<std::uint32_t>(s.left.to_ulong()), static_cast<std::uint32_t>(s.right.to_ulong())});
  return out;
}

// Seeded corpus of small random graphs, m + n <= 14.
std::vector<BipartiteGraph> corpus(std::size_t count) {
  std::vector<BipartiteGraph> out;
  const double ps[] = {0.2, 0.5, 0.8};
  for (std::uint64_t i = 0; out.size() < count; ++i) {
    const std::size_t m = 1 + i % 9;
    const std::size_t n = 1 + (i / 9) % (14 - m);
    out.push_back(sample_bipartite(m, n, EdgeProbability(ps[i % 3]), Seed{2024, i}));
  }
  return out;
}

Integer pow2(std::size_t k) { return Integer(1) << static_cast<mp_bitcnt_t>(k); }

const BipartiteGraph single_edge_2x1(2, 1, {bits_of(1, {0}), bits_of(1, {})});

}  // namespace

TEST(IsMaximalStable, Examples) {
  const BipartiteGraph empty(3, 2);
  EXPECT_TRUE(is_maximal_stable(empty, {full_bits(3), full_bits(2)}));
  const auto k22 = BipartiteGraph::complete(2, 2);
  EXPECT_TRUE(is_maximal_stable(k22, {full_bits(2), Bits(2)}));
  EXPECT_FALSE(is_maximal_stable(k22, {bits_of(2, {0}), Bits(2)}));
  EXPECT_FALSE(is_maximal_stable(k22, {bits_of(2, {0}), bits_of(2, {0})}));
  const auto pm = BipartiteGraph::matching(2, 2);
  EXPECT_TRUE(is_maximal_stable(pm, {bits_of(2, {0}), bits_of(2, {1})}));
  EXPECT_THROW(is_maximal_stable(pm, {Bits(3), Bits(2)}), RangeError);
}

TEST(Enumerate, Examples) {
  const auto k = enumerate_mss(BipartiteGraph::complete(3, 4));
  ASSERT_EQ(k.size(), 2u);
  EXPECT_EQ(k[0], (StableSet{Bits(3), full_bits(4)}));
  EXPECT_EQ(k[1], (StableSet{full_bits(3), Bits(4)}));

  const auto e = enumerate_mss(BipartiteGraph(3, 2));
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0], (StableSet{full_bits(3), full_bits(2)}));

  EXPECT_EQ(as_masks(enumerate_mss(BipartiteGraph::matching(2, 2))),
            (std::set<oracle::VertexSet>{{0b11, 0b00}, {0b01, 0b10}, {0b10, 0b01}, {0b00, 0b11}}));
}

TEST(Enumerate, BruteForceExamplesAndCap) {
  EXPECT_EQ(brute_force_mss(BipartiteGraph::complete(3, 3)).size(), 2u);
  EXPECT_EQ(brute_force_mss(BipartiteGraph(2, 2)).size(), 1u);
  EXPECT_THROW(brute_force_mss(BipartiteGraph(13, 12)), CapExceeded);
  EXPECT_THROW(enumerate_mss(BipartiteGraph(20, 20), EnumerationOptions{1u << 10, 1}), CapExceeded);
}

TEST(Enumerate, AgreesWithDefinitionOracle) {
  for (const auto& g : corpus(200)) {
    const auto fast = enumerate_mss(g);
    EXPECT_TRUE(std::is_sorted(fast.begin(), fast.end()));
    EXPECT_EQ(as_masks(fast), oracle::maximal_stable_sets(g)) << serialize_graph(g);
    EXPECT_EQ(fast, brute_force_mss(g));
  }
}

TEST(Enumerate, EveryEmittedSetIsMaximalStable) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto g = sample_bipartite(12, 17, EdgeProbability(0.3), Seed{s, 3});
    for_each_mss(g, [&](const Bits& l, const Bits& r) { EXPECT_TRUE(is_maximal_stable(g, {l, r})); });
  }
}

TEST(Stats, Examples) {
  for (std::size_t k = 1; k <= 4; ++k) {
    const auto st = mss_stats(BipartiteGraph::matching(k, k));
    EXPECT_EQ(st.total, pow2(k));
    for (std::size_t i = 0; i <= k; ++i) EXPECT_EQ(st.left_hist[i], binomial(k, i));
    EXPECT_EQ(st, mss_stats_brute_force(BipartiteGraph::matching(k, k)));
  }
  const auto k23 = mss_stats(BipartiteGraph::complete(2, 3));
  EXPECT_EQ(k23.total, 2);
  EXPECT_EQ(k23.left_hist, (std::vector<Integer>{1, 0, 1}));

  const auto edge = mss_stats(single_edge_2x1);
  EXPECT_EQ(edge.total, 2);
  EXPECT_EQ(edge.left_vertex_counts, (std::vector<Integer>{1, 2}));
}

TEST(Stats, InvariantsOnCorpus) {
  for (const auto& g : corpus(300)) {
    const auto st = mss_stats(g);
    Integer hist_sum = 0, weighted = 0, vertex_sum = 0;
    for (std::size_t k = 0; k < st.left_hist.size(); ++k) {
      hist_sum += st.left_hist[k];
      weighted += st.left_hist[k] * static_cast<unsigned long>(k);
    }
    for (const auto& c : st.left_vertex_counts) vertex_sum += c;
    EXPECT_EQ(hist_sum, st.total);
    EXPECT_EQ(vertex_sum, weighted);
    EXPECT_GE(st.total, 1);
    EXPECT_LE(st.total, pow2(std::min(g.m(), g.n())));

    const auto swapped = mss_stats(swap_sides(g));
    EXPECT_EQ(swapped.total, st.total);
    EXPECT_EQ(swapped.left_hist, st.right_hist);
    EXPECT_EQ(swapped.left_vertex_counts, st.right_vertex_counts);
    EXPECT_EQ(st, mss_stats_brute_force(g));
  }
}

TEST(Stats, WorkerCountDoesNotMatter) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto g = sample_bipartite(18, 22, EdgeProbability(0.5), Seed{s, 11});
    const auto one = mss_stats(g, EnumerationOptions{1u << 30, 1});
    EXPECT_EQ(mss_stats(g, EnumerationOptions{1u << 30, 4}), one);
    EXPECT_EQ(mss_stats(g, EnumerationOptions{1u << 30, 7}), one);
  }
}

TEST(LeftAvg, Examples) {
  EXPECT_EQ(left_avg(BipartiteGraph::complete(5, 3)), Rational(5, 2));
  EXPECT_EQ(left_avg(BipartiteGraph(4, 3)), Rational(4));
  EXPECT_EQ(left_avg(BipartiteGraph::matching(2, 2)), Rational(1));
  EXPECT_EQ(left_avg(BipartiteGraph::matching(3, 3)), Rational(3, 2));
}

TEST(Witness, Examples) {
  const auto pm = mss_stats(BipartiteGraph::matching(2, 2));
  const auto w = almost_unstable_vertex(pm, Side::Left, 0);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->vertex, 0u);
  EXPECT_EQ(w->fraction, Rational(1, 2));

  EXPECT_FALSE(almost_unstable_vertex(mss_stats(BipartiteGraph(3, 3)), Side::Left, 0));

  const auto e = almost_unstable_vertex(mss_stats(single_edge_2x1), Side::Left, 0);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->vertex, 0u);
  EXPECT_EQ(e->fraction, Rational(1, 2));
  EXPECT_THROW(almost_unstable_vertex(pm, Side::Left, -1), RangeError);
}

TEST(Conjecture, Examples) {
  const auto k = conjecture_check(BipartiteGraph::complete(3, 4), 0);
  EXPECT_TRUE(k.satisfied);
  EXPECT_EQ(k.left->fraction, Rational(1, 2));
  EXPECT_EQ(k.right->fraction, Rational(1, 2));
  EXPECT_TRUE(conjecture_check(BipartiteGraph::complete(1, 1), 0).satisfied);

  const auto empty = conjecture_check(BipartiteGraph(3, 2), 0);
  EXPECT_TRUE(empty.vacuous);
  EXPECT_TRUE(empty.satisfied);
  EXPECT_FALSE(empty.left);
}

TEST(Conjecture, AllSmallGraphsWithAnEdge) {
  for (std::size_t m = 1; m < 7; ++m) {
    for (std::size_t n = 1; m + n <= 7; ++n) {
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (m * n)); ++mask) {
        const auto g = oracle::graph_from_mask(m, n, mask);
        ASSERT_TRUE(conjecture_check(g, 0).satisfied) << serialize_graph(g);
      }
    }
  }
}

TEST(Lemmas, AveragingAndLargeAndSmallImplications) {
  const Rational deltas[] = {0, Rational(1, 10), Rational(1, 4)};
  const Rational nus[] = {Rational(1, 10), Rational(1, 4), Rational(1, 2)};
  int largeandsmall_cases = 0;
  for (const auto& g : corpus(300)) {
    const auto st = mss_stats(g);
    const Rational avg = left_avg(st);
    const Rational m(static_cast<unsigned long>(g.m()));
    for (const auto& delta : deltas) {
      const Rational bound = (Rational(1, 2) + delta) * m;
      if (avg <= bound) {
        const auto w = almost_unstable_vertex(st, Side::Left, delta);
        ASSERT_TRUE(w) << serialize_graph(g);
        EXPECT_LE(w->fraction, Rational(1, 2) + delta);
      }
      for (const auto& nu : nus) {
        const Integer small = count_left_at_most(st, (1 - nu) * m / 2);
        const Integer large = count_left_at_least(st, bound);
        if (Rational(small) >= Rational(large) / nu) {
          ++largeandsmall_cases;
          EXPECT_LE(avg, bound) << serialize_graph(g);
        }
      }
    }
  }
  EXPECT_GT(largeandsmall_cases, 0);
}

TEST(CountLeft, Examples) {
  EXPECT_EQ(count_left_at_least(mss_stats(BipartiteGraph::matching(4, 4)), 2), 11);
  EXPECT_EQ(count_left_at_least(mss_stats(BipartiteGraph::complete(5, 3)), Rational(5, 2)), 1);
  EXPECT_EQ(count_left_at_least(mss_stats(BipartiteGraph(4, 2)), 2), 1);
  EXPECT_EQ(count_left_at_most(mss_stats(BipartiteGraph::matching(4, 4)), Rational(3, 2)), 5);
}

TEST(InducedMatching, Examples) {
  const auto pm = find_induced_matching(BipartiteGraph::matching(5, 5), 5);
  ASSERT_EQ(pm.status, MatchingStatus::Found);
  EXPECT_EQ(pm.edges.size(), 5u);
  EXPECT_EQ(find_induced_matching(BipartiteGraph::complete(2, 2), 2).status, MatchingStatus::Absent);
  EXPECT_EQ(find_induced_matching(BipartiteGraph(3, 3), 1).status, MatchingStatus::Absent);
  EXPECT_EQ(find_induced_matching(BipartiteGraph::matching(12, 12), 12, 3).status, MatchingStatus::BudgetExhausted);
}

TEST(InducedMatching, SizeTwoAgreesWithPairCheck) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto g = sample_bipartite(8, 8, EdgeProbability(0.3), Seed{s, 5});
    bool exists = false;
    for (std::size_t u1 = 0; u1 < 8 && !exists; ++u1)
      for (std::size_t u2 = u1 + 1; u2 < 8 && !exists; ++u2)
        for (std::size_t v1 = 0; v1 < 8 && !exists; ++v1)
          for (std::size_t v2 = 0; v2 < 8 && !exists; ++v2)
            exists = v1 != v2 && g.has_edge(u1, v1) && g.has_edge(u2, v2) && !g.has_edge(u1, v2) &&
                     !g.has_edge(u2, v1);
    const auto found = find_induced_matching(g, 2);
    EXPECT_EQ(found.status == MatchingStatus::Found, exists);
    if (found.status == MatchingStatus::Found) EXPECT_TRUE(is_induced_matching(g, found.edges));
  }
}

TEST(MssJson, Shapes) {
  const auto st = mss_stats(BipartiteGraph::matching(2, 2));
  EXPECT_NE(stats_to_json(st).find(R"("total":"4")"), std::string::npos);
  const auto v = conjecture_check(BipartiteGraph::matching(2, 2), 0);
  EXPECT_NE(verdict_to_json(v).find(R"("1/2")"), std::string::npos);
}
