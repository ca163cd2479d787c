#pragma once

#include "ucs/bits.hpp"
#include "ucs/random.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ucs {

// Edge probability p together with q = 1 - p.
//
// The sampler accepts the degenerate values p = 0 and p = 1 (empty and
// complete fixtures); closed-form evaluators call require_proper() and reject
// them.
class EdgeProbability {
 public:
  explicit EdgeProbability(double p);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  bool degenerate() const noexcept { return p_ == 0.0 || p_ == 1.0; }

  // Throws RangeError unless 0 < p < 1.
  const EdgeProbability& require_proper() const;

 private:
  double p_;
  double q_;
};

// Bipartite graph with fixed bipartition (L, R), |L| = m, |R| = n.
// Adjacency is stored from the left only: row u holds N(u) as n bits.
// Values are immutable after construction.
class BipartiteGraph {
 public:
  // Edgeless graph. Throws ZeroSideError if m or n is 0.
  BipartiteGraph(std::size_t m, std::size_t n);

  // Throws ZeroSideError on an empty side, RangeError if rows.size() != m or
  // a row is not n bits wide.
  BipartiteGraph(std::size_t m, std::size_t n, std::vector<Bits> rows);

  static BipartiteGraph complete(std::size_t m, std::size_t n);
  // Edges u_i v_i for i < min(m, n).
  static BipartiteGraph matching(std::size_t m, std::size_t n);

  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }

  bool has_edge(std::size_t u, std::size_t v) const { return rows_.at(u).test(v); }
  const Bits& row(std::size_t u) const { return rows_.at(u); }
  std::span<const Bits> rows() const noexcept { return rows_; }

  // N(v) for v in R as m bits, by column scan.
  Bits column(std::size_t v) const;

  std::size_t edge_count() const;
  bool edgeless() const;

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<Bits> rows_;
};

// Each of the m*n pairs is an edge independently with probability p. Edge
// (u, v) uses draw u*n + v of `seed`, so the graph is a pure function of the
// arguments.
BipartiteGraph sample_bipartite(std::size_t m, std::size_t n, EdgeProbability prob, Seed seed);

// Exchanges L and R. Involutive.
BipartiteGraph swap_sides(const BipartiteGraph& g);

// G[lsub ∪ rsub] with vertices renumbered densely in increasing order.
// Throws ZeroSideError if either subset is empty, RangeError on width mismatch.
BipartiteGraph induced_subgraph(const BipartiteGraph& g, const Bits& lsub, const Bits& rsub);

// Text format: header "m n" followed by m lines of n characters in {0,1}.
BipartiteGraph parse_graph(std::string_view text);
std::string serialize_graph(const BipartiteGraph& g);

// {"m":..,"n":..,"rows":["0101",..]}
std::string graph_to_json(const BipartiteGraph& g);

}  // namespace ucs
