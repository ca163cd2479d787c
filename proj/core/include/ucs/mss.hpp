#pragma once

#include "ucs/bits.hpp"
#include "ucs/graph.hpp"
#include "ucs/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ucs {

// A vertex set split by side. left has m bits, right has n bits.
struct StableSet {
  Bits left;
  Bits right;

  friend bool operator==(const StableSet&, const StableSet&) = default;
  friend std::strong_ordering operator<=>(const StableSet& a, const StableSet& b) {
    if (auto c = compare_bits(a.left, b.left); c != 0) return c;
    return compare_bits(a.right, b.right);
  }
};

struct EnumerationOptions {
  // Refuse graphs whose smaller side has more than this many subsets.
  std::uint64_t max_candidates = std::uint64_t{1} << 30;
  // Worker threads for mss_stats; the result does not depend on it.
  unsigned workers = 1;
};

// Number of left-part candidates the enumerator scans: 2^min(m, n).
// Saturates at UINT64_MAX.
std::uint64_t candidate_count(const BipartiteGraph& g) noexcept;

// True iff s is stable and every vertex outside s has a neighbour in s.
// Throws RangeError if the widths of s do not match g.
bool is_maximal_stable(const BipartiteGraph& g, const StableSet& s);

using MssVisitor = std::function<void(const Bits& left, const Bits& right)>;

// Calls visit once per maximal stable set of g.
//
// Maximal stable sets of a bipartite graph are the pairs (A, R \ N(A)) with
// A ⊆ L such that every u in L \ A has a neighbour in R \ N(A). The search
// runs over subsets of the smaller side (sides are exchanged when n < m and
// results mapped back) as an include/exclude tree that carries N(A) along and
// cuts a branch as soon as an excluded vertex has lost all of its possible
// neighbours in the companion set.
//
// Throws CapExceeded if candidate_count(g) > options.max_candidates.
void for_each_mss(const BipartiteGraph& g, const MssVisitor& visit,
                  const EnumerationOptions& options = {});

// All maximal stable sets, in canonical (sorted) order.
std::vector<StableSet> enumerate_mss(const BipartiteGraph& g, const EnumerationOptions& options = {});

// Exhaustive oracle over all 2^(m+n) vertex subsets. Throws CapExceeded when
// m + n > 24. Canonical order.
std::vector<StableSet> brute_force_mss(const BipartiteGraph& g);

// Exact counts over the maximal stable sets 𝒜(G).
struct MssStats {
  Integer total;
  std::vector<Integer> left_hist;            // [k]: sets with |A ∩ L| = k, k = 0..m
  std::vector<Integer> right_hist;           // [k]: sets with |A ∩ R| = k, k = 0..n
  std::vector<Integer> left_vertex_counts;   // [u]: |𝒜_u| for u in L
  std::vector<Integer> right_vertex_counts;  // [v]: |𝒜_v| for v in R

  MssStats() = default;
  MssStats(std::size_t m, std::size_t n);

  std::size_t m() const noexcept { return left_vertex_counts.size(); }
  std::size_t n() const noexcept { return right_vertex_counts.size(); }

  void add(const Bits& left, const Bits& right);
  // Associative and commutative.
  void merge(const MssStats& other);

  friend bool operator==(const MssStats&, const MssStats&) = default;
};

MssStats mss_stats(const BipartiteGraph& g, const EnumerationOptions& options = {});
MssStats mss_stats_brute_force(const BipartiteGraph& g);

// left-avg(G): mean of |A ∩ L| over all maximal stable sets.
Rational left_avg(const MssStats& stats);
Rational left_avg(const BipartiteGraph& g, const EnumerationOptions& options = {});

enum class Side { Left, Right };

struct Witness {
  std::size_t vertex;
  Rational fraction;  // |𝒜_v| / |𝒜|

  friend bool operator==(const Witness&, const Witness&) = default;
};

// Vertex of `side` with the smallest containment fraction (smallest index on
// ties), provided that fraction is at most 1/2 + delta.
std::optional<Witness> almost_unstable_vertex(const MssStats& stats, Side side, const Rational& delta);

struct ConjectureVerdict {
  Rational delta;
  std::optional<Witness> left;
  std::optional<Witness> right;
  bool satisfied = false;
  // Edgeless graph: outside the conjecture's scope, reported satisfied.
  bool vacuous = false;
};

ConjectureVerdict conjecture_verdict(const MssStats& stats, const Rational& delta, bool edgeless);
ConjectureVerdict conjecture_check(const BipartiteGraph& g, const Rational& delta,
                                   const EnumerationOptions& options = {});

// Number of maximal stable sets with |A ∩ L| >= threshold (resp. <=).
Integer count_left_at_least(const MssStats& stats, const Rational& threshold);
Integer count_left_at_most(const MssStats& stats, const Rational& threshold);

enum class MatchingStatus { Found, Absent, BudgetExhausted };

struct MatchingResult {
  MatchingStatus status = MatchingStatus::Absent;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (u, v) pairs
  std::uint64_t nodes = 0;                                 // search nodes visited
};

// Backtracking search for an induced matching of size k. Absent is only
// reported when the search space was exhausted within `budget` nodes.
MatchingResult find_induced_matching(const BipartiteGraph& g, std::size_t k,
                                     std::uint64_t budget = 10'000'000);

bool is_induced_matching(const BipartiteGraph& g,
                         const std::vector<std::pair<std::size_t, std::size_t>>& edges);

std::string stats_to_json(const MssStats& stats);
std::string verdict_to_json(const ConjectureVerdict& verdict);

}  // namespace ucs
