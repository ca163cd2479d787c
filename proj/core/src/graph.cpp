#include "ucs/graph.hpp"

#include "ucs/error.hpp"

#include <charconv>
#include <cstdint>
#include <string>
#include <utility>

#include "json.hpp"

namespace ucs {

std::strong_ordering compare_bits(const Bits& a, const Bits& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.test(i) != b.test(i)) return a.test(i) ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

std::string bits_to_row(const Bits& bits) {
  std::string s(bits.size(), '0');
  for_each_bit(bits, [&](std::size_t i) { s[i] = '1'; });
  return s;
}

EdgeProbability::EdgeProbability(double p) : p_(p), q_(1.0 - p) {
  if (!(p >= 0.0 && p <= 1.0)) throw RangeError("edge probability must lie in [0, 1]");
}

const EdgeProbability& EdgeProbability::require_proper() const {
  if (degenerate()) throw RangeError("closed forms require 0 < p < 1");
  return *this;
}

BipartiteGraph::BipartiteGraph(std::size_t m, std::size_t n) : m_(m), n_(n) {
  if (m == 0 || n == 0) throw ZeroSideError("both sides of a bipartite graph must be nonempty");
  rows_.assign(m, Bits(n));
}

BipartiteGraph::BipartiteGraph(std::size_t m, std::size_t n, std::vector<Bits> rows)
    : m_(m), n_(n), rows_(std::move(rows)) {
  if (m == 0 || n == 0) throw ZeroSideError("both sides of a bipartite graph must be nonempty");
  if (rows_.size() != m) throw RangeError("adjacency must have exactly m rows");
  for (const auto& r : rows_) {
    if (r.size() != n) throw RangeError("every adjacency row must be n bits wide");
  }
}

BipartiteGraph BipartiteGraph::complete(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw ZeroSideError("both sides of a bipartite graph must be nonempty");
  return BipartiteGraph(m, n, std::vector<Bits>(m, full_bits(n)));
}

BipartiteGraph BipartiteGraph::matching(std::size_t m, std::size_t n) {
  BipartiteGraph g(m, n);
  for (std::size_t i = 0; i < std::min(m, n); ++i) g.rows_[i].set(i);
  return g;
}

Bits BipartiteGraph::column(std::size_t v) const {
  if (v >= n_) throw RangeError("right vertex out of range");
  Bits col(m_);
  for (std::size_t u = 0; u < m_; ++u) {
    if (rows_[u].test(v)) col.set(u);
  }
  return col;
}

std::size_t BipartiteGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& r : rows_) total += r.count();
  return total;
}

bool BipartiteGraph::edgeless() const {
  for (const auto& r : rows_) {
    if (r.any()) return false;
  }
  return true;
}

BipartiteGraph sample_bipartite(std::size_t m, std::size_t n, EdgeProbability prob, Seed seed) {
  BipartiteGraph empty(m, n);  // validates the sides
  const CounterRng rng(seed);
  std::vector<Bits> rows(m, Bits(n));
  const double p = prob.p();
  if (p == 1.0) {
    for (auto& r : rows) r.set();
  } else if (p > 0.0) {
    std::uint64_t counter = 0;
    for (std::size_t u = 0; u < m; ++u) {
      for (std::size_t v = 0; v < n; ++v, ++counter) {
        if (rng.bernoulli(counter, p)) rows[u].set(v);
      }
    }
  }
  return BipartiteGraph(m, n, std::move(rows));
}

BipartiteGraph swap_sides(const BipartiteGraph& g) {
  std::vector<Bits> rows(g.n(), Bits(g.m()));
  for (std::size_t u = 0; u < g.m(); ++u) {
    for_each_bit(g.row(u), [&](std::size_t v) { rows[v].set(u); });
  }
  return BipartiteGraph(g.n(), g.m(), std::move(rows));
}

BipartiteGraph induced_subgraph(const BipartiteGraph& g, const Bits& lsub, const Bits& rsub) {
  if (lsub.size() != g.m() || rsub.size() != g.n()) throw RangeError("subset width does not match the graph");
  if (lsub.none() || rsub.none()) throw ZeroSideError("induced subgraph needs a nonempty subset on each side");
  std::vector<std::size_t> keep_right;
  for_each_bit(rsub, [&](std::size_t v) { keep_right.push_back(v); });
  std::vector<Bits> rows;
  for_each_bit(lsub, [&](std::size_t u) {
    Bits row(keep_right.size());
    for (std::size_t j = 0; j < keep_right.size(); ++j) {
      if (g.has_edge(u, keep_right[j])) row.set(j);
    }
    rows.push_back(std::move(row));
  });
  const std::size_t m = rows.size();
  return BipartiteGraph(m, keep_right.size(), std::move(rows));
}

namespace {

std::size_t parse_count(std::string_view token, std::string_view header) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(ParseErrorKind::MalformedHeader, "malformed graph header '" + std::string(header) + "'");
  }
  return value;
}

}  // namespace

BipartiteGraph parse_graph(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  if (lines.empty()) throw ParseError(ParseErrorKind::MalformedHeader, "empty graph text");

  const auto header = lines.front();
  const auto space = header.find(' ');
  if (space == std::string_view::npos) {
    throw ParseError(ParseErrorKind::MalformedHeader, "graph header must be 'm n'");
  }
  const std::size_t m = parse_count(header.substr(0, space), header);
  const std::size_t n = parse_count(header.substr(space + 1), header);

  if (lines.size() - 1 != m) {
    throw ParseError(ParseErrorKind::WrongRowCount,
                     "expected " + std::to_string(m) + " rows, found " + std::to_string(lines.size() - 1));
  }
  std::vector<Bits> rows;
  rows.reserve(m);
  for (std::size_t u = 0; u < m; ++u) {
    const auto line = lines[u + 1];
    Bits row(line.size());
    for (std::size_t v = 0; v < line.size(); ++v) {
      if (line[v] == '1') {
        row.set(v);
      } else if (line[v] != '0') {
        throw ParseError(ParseErrorKind::IllegalCharacter,
                         "illegal character in row " + std::to_string(u) + " column " + std::to_string(v));
      }
    }
    if (line.size() != n) {
      throw ParseError(ParseErrorKind::WrongRowWidth,
                       "row " + std::to_string(u) + " has width " + std::to_string(line.size()) + ", expected " +
                           std::to_string(n));
    }
    rows.push_back(std::move(row));
  }
  return BipartiteGraph(m, n, std::move(rows));
}

std::string serialize_graph(const BipartiteGraph& g) {
  std::string out = std::to_string(g.m()) + " " + std::to_string(g.n()) + "\n";
  out.reserve(out.size() + g.m() * (g.n() + 1));
  for (const auto& r : g.rows()) {
    out += bits_to_row(r);
    out += '\n';
  }
  return out;
}

std::string graph_to_json(const BipartiteGraph& g) {
  nlohmann::ordered_json j;
  j["m"] = g.m();
  j["n"] = g.n();
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : g.rows()) rows.push_back(bits_to_row(r));
  j["rows"] = std::move(rows);
  return j.dump();
}

}  // namespace ucs
