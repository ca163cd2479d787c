#include "ucs/mss.hpp"

#include "ucs/error.hpp"
#include "ucs/parallel.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>
#include <utility>

#include "json.hpp"

namespace ucs {

namespace {

// The enumerator never goes beyond this many candidate-side vertices, so
// 64-bit tallies cannot overflow.
constexpr std::size_t kMaxCandidateSide = 62;

// Subsets of the candidate side X are searched; companions live on side Y.
// rows[x] is N(x) ⊆ Y.
struct Orientation {
  std::vector<Bits> rows;
  std::size_t x_size = 0;
  std::size_t y_size = 0;
  bool swapped = false;  // X is the right side of the original graph
};

Orientation orient(const BipartiteGraph& g) {
  Orientation o;
  if (g.n() < g.m()) {
    const auto t = swap_sides(g);
    o.rows.assign(t.rows().begin(), t.rows().end());
    o.swapped = true;
  } else {
    o.rows.assign(g.rows().begin(), g.rows().end());
  }
  o.x_size = o.rows.size();
  o.y_size = o.swapped ? g.m() : g.n();
  return o;
}

void check_cap(const BipartiteGraph& g, const EnumerationOptions& options) {
  const std::size_t side = std::min(g.m(), g.n());
  if (side > kMaxCandidateSide || candidate_count(g) > options.max_candidates) {
    throw CapExceeded("enumeration over 2^" + std::to_string(side) + " candidates exceeds the cap of " +
                      std::to_string(options.max_candidates));
  }
}

// Include/exclude search over X. Invariant at every node: each excluded
// vertex still has a neighbour in Y \ N(A); since N(A) only grows along a
// branch, a violation prunes the whole subtree. Leaves are exactly the
// maximal stable sets.
template <typename Emit>
class Search {
 public:
  Search(const Orientation& o, Emit& emit)
      : o_(o), emit_(emit), nb_(o.x_size + 1, Bits(o.y_size)), a_(o.x_size), companion_(o.y_size) {}

  // Replays the decisions for X vertices [0, depth) encoded in `prefix`
  // (bit i set = include) and searches the remaining subtree.
  void run_prefix(std::uint64_t prefix, std::size_t depth) {
    const Bits* cur = &nb_[0];
    for (std::size_t d = 0; d < depth; ++d) {
      if ((prefix >> d) & 1U) {
        if (!include(d, *cur)) return;
        a_.set(d);
        cur = &nb_[d + 1];
      } else {
        if (!can_exclude(d, *cur)) return;
        excluded_.push_back(d);
      }
    }
    run(depth, *cur);
  }

 private:
  bool include(std::size_t d, const Bits& cur) {
    Bits& next = nb_[d + 1];
    next = cur;
    next |= o_.rows[d];
    for (const std::size_t u : excluded_) {
      if (o_.rows[u].is_subset_of(next)) return false;
    }
    return true;
  }

  bool can_exclude(std::size_t d, const Bits& cur) const { return !o_.rows[d].is_subset_of(cur); }

  void run(std::size_t d, const Bits& cur) {
    if (d == o_.x_size) {
      companion_ = cur;
      companion_.flip();
      emit_(a_, companion_);
      return;
    }
    if (include(d, cur)) {
      a_.set(d);
      run(d + 1, nb_[d + 1]);
      a_.reset(d);
    }
    if (can_exclude(d, cur)) {
      excluded_.push_back(d);
      run(d + 1, cur);
      excluded_.pop_back();
    }
  }

  const Orientation& o_;
  Emit& emit_;
  std::vector<Bits> nb_;  // nb_[d + 1] = N(A) after including X vertex d
  Bits a_;
  Bits companion_;
  std::vector<std::size_t> excluded_;
};

template <typename Emit>
void search_all(const Orientation& o, Emit& emit) {
  Search<Emit> s(o, emit);
  s.run_prefix(0, 0);
}

// 64-bit counterpart of MssStats used inside the hot loop.
struct Tally {
  std::uint64_t total = 0;
  std::vector<std::uint64_t> left_hist, right_hist, left_counts, right_counts;

  Tally(std::size_t m, std::size_t n) : left_hist(m + 1), right_hist(n + 1), left_counts(m), right_counts(n) {}

  void add(const Bits& left, const Bits& right) {
    ++total;
    ++left_hist[left.count()];
    ++right_hist[right.count()];
    for_each_bit(left, [&](std::size_t u) { ++left_counts[u]; });
    for_each_bit(right, [&](std::size_t v) { ++right_counts[v]; });
  }

  MssStats to_stats() const {
    MssStats s(left_counts.size(), right_counts.size());
    auto to_integer = [](std::uint64_t x) {
      Integer z;
      mpz_import(z.get_mpz_t(), 1, 1, sizeof(x), 0, 0, &x);
      return z;
    };
    s.total = to_integer(total);
    for (std::size_t i = 0; i < left_hist.size(); ++i) s.left_hist[i] = to_integer(left_hist[i]);
    for (std::size_t i = 0; i < right_hist.size(); ++i) s.right_hist[i] = to_integer(right_hist[i]);
    for (std::size_t i = 0; i < left_counts.size(); ++i) s.left_vertex_counts[i] = to_integer(left_counts[i]);
    for (std::size_t i = 0; i < right_counts.size(); ++i) s.right_vertex_counts[i] = to_integer(right_counts[i]);
    return s;
  }
};

template <typename Sink>
struct OrientedEmit {
  bool swapped;
  Sink& sink;
  void operator()(const Bits& a, const Bits& b) {
    if (swapped) {
      sink(b, a);
    } else {
      sink(a, b);
    }
  }
};

Rational half_plus(const Rational& delta) {
  if (delta < 0) throw RangeError("delta must be nonnegative");
  return Rational(1, 2) + delta;
}

}  // namespace

std::uint64_t candidate_count(const BipartiteGraph& g) noexcept {
  const std::size_t side = std::min(g.m(), g.n());
  if (side >= 64) return std::numeric_limits<std::uint64_t>::max();
  return std::uint64_t{1} << side;
}

bool is_maximal_stable(const BipartiteGraph& g, const StableSet& s) {
  if (s.left.size() != g.m() || s.right.size() != g.n()) {
    throw RangeError("vertex set does not match the graph's sides");
  }
  for (std::size_t u = 0; u < g.m(); ++u) {
    const bool touches = g.row(u).intersects(s.right);
    if (s.left.test(u) && touches) return false;  // edge inside s
    if (!s.left.test(u) && !touches) return false;  // u could be added
  }
  for (std::size_t v = 0; v < g.n(); ++v) {
    if (!s.right.test(v) && !g.column(v).intersects(s.left)) return false;
  }
  return true;
}

void for_each_mss(const BipartiteGraph& g, const MssVisitor& visit, const EnumerationOptions& options) {
  check_cap(g, options);
  const Orientation o = orient(g);
  OrientedEmit<const MssVisitor> emit{o.swapped, visit};
  search_all(o, emit);
}

std::vector<StableSet> enumerate_mss(const BipartiteGraph& g, const EnumerationOptions& options) {
  std::vector<StableSet> out;
  for_each_mss(
      g, [&](const Bits& left, const Bits& right) { out.push_back(StableSet{left, right}); }, options);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<StableSet> brute_force_mss(const BipartiteGraph& g) {
  const std::size_t m = g.m();
  const std::size_t n = g.n();
  if (m + n > 24) throw CapExceeded("brute force is limited to m + n <= 24");

  // Same definition as is_maximal_stable, on 32-bit masks.
  std::vector<std::uint32_t> row(m), col(n);
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (g.has_edge(u, v)) {
        row[u] |= 1U << v;
        col[v] |= 1U << u;
      }
    }
  }
  std::vector<StableSet> out;
  const std::uint32_t left_mask = (1U << m) - 1U;
  for (std::uint32_t set = 0; set < (1U << (m + n)); ++set) {
    const std::uint32_t left = set & left_mask;
    const std::uint32_t right = set >> m;
    bool ok = true;
    for (std::size_t u = 0; u < m && ok; ++u) {
      const bool touches = (row[u] & right) != 0;
      ok = ((left >> u) & 1U) ? !touches : touches;
    }
    for (std::size_t v = 0; v < n && ok; ++v) {
      if (!((right >> v) & 1U)) ok = (col[v] & left) != 0;
    }
    if (!ok) continue;
    StableSet s{Bits(m, left), Bits(n, right)};
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

MssStats::MssStats(std::size_t m, std::size_t n)
    : total(0), left_hist(m + 1), right_hist(n + 1), left_vertex_counts(m), right_vertex_counts(n) {}

void MssStats::add(const Bits& left, const Bits& right) {
  total += 1;
  left_hist.at(left.count()) += 1;
  right_hist.at(right.count()) += 1;
  for_each_bit(left, [&](std::size_t u) { left_vertex_counts[u] += 1; });
  for_each_bit(right, [&](std::size_t v) { right_vertex_counts[v] += 1; });
}

void MssStats::merge(const MssStats& other) {
  if (other.m() != m() || other.n() != n()) throw RangeError("cannot merge statistics of different shapes");
  total += other.total;
  for (std::size_t i = 0; i < left_hist.size(); ++i) left_hist[i] += other.left_hist[i];
  for (std::size_t i = 0; i < right_hist.size(); ++i) right_hist[i] += other.right_hist[i];
  for (std::size_t i = 0; i < left_vertex_counts.size(); ++i) left_vertex_counts[i] += other.left_vertex_counts[i];
  for (std::size_t i = 0; i < right_vertex_counts.size(); ++i) right_vertex_counts[i] += other.right_vertex_counts[i];
}

MssStats mss_stats(const BipartiteGraph& g, const EnumerationOptions& options) {
  check_cap(g, options);
  const Orientation o = orient(g);

  // Split the search tree by the decisions on the first `depth` vertices of X.
  std::size_t depth = 0;
  if (options.workers > 1) {
    while (depth < o.x_size && depth < 12 && (std::size_t{1} << depth) < 16 * std::size_t{options.workers}) ++depth;
  }
  const std::size_t tasks = std::size_t{1} << depth;

  std::vector<Tally> tallies(tasks, Tally(g.m(), g.n()));
  parallel_for(tasks, options.workers, [&](std::size_t t) {
    auto sink = [&](const Bits& left, const Bits& right) { tallies[t].add(left, right); };
    OrientedEmit<decltype(sink)> emit{o.swapped, sink};
    Search<decltype(emit)> s(o, emit);
    s.run_prefix(t, depth);
  });

  MssStats stats = tallies.front().to_stats();
  for (std::size_t t = 1; t < tasks; ++t) stats.merge(tallies[t].to_stats());
  return stats;
}

MssStats mss_stats_brute_force(const BipartiteGraph& g) {
  MssStats stats(g.m(), g.n());
  for (const auto& s : brute_force_mss(g)) stats.add(s.left, s.right);
  return stats;
}

Rational left_avg(const MssStats& stats) {
  if (stats.total == 0) throw RangeError("statistics hold no maximal stable sets");
  Integer weighted = 0;
  for (std::size_t k = 0; k < stats.left_hist.size(); ++k) weighted += stats.left_hist[k] * k;
  Rational r(weighted, stats.total);
  r.canonicalize();
  return r;
}

Rational left_avg(const BipartiteGraph& g, const EnumerationOptions& options) {
  return left_avg(mss_stats(g, options));
}

std::optional<Witness> almost_unstable_vertex(const MssStats& stats, Side side, const Rational& delta) {
  const Rational bound = half_plus(delta);
  const auto& counts = side == Side::Left ? stats.left_vertex_counts : stats.right_vertex_counts;
  if (counts.empty() || stats.total == 0) return std::nullopt;
  std::size_t best = 0;
  for (std::size_t v = 1; v < counts.size(); ++v) {
    if (counts[v] < counts[best]) best = v;
  }
  Rational fraction(counts[best], stats.total);
  fraction.canonicalize();
  if (fraction > bound) return std::nullopt;
  return Witness{best, fraction};
}

ConjectureVerdict conjecture_verdict(const MssStats& stats, const Rational& delta, bool edgeless) {
  ConjectureVerdict v;
  v.delta = delta;
  v.left = almost_unstable_vertex(stats, Side::Left, delta);
  v.right = almost_unstable_vertex(stats, Side::Right, delta);
  v.vacuous = edgeless;
  v.satisfied = edgeless || (v.left.has_value() && v.right.has_value());
  return v;
}

ConjectureVerdict conjecture_check(const BipartiteGraph& g, const Rational& delta,
                                   const EnumerationOptions& options) {
  return conjecture_verdict(mss_stats(g, options), delta, g.edgeless());
}

Integer count_left_at_least(const MssStats& stats, const Rational& threshold) {
  Integer sum = 0;
  const Integer from = ceil_of(threshold);
  for (std::size_t k = 0; k < stats.left_hist.size(); ++k) {
    if (Integer(static_cast<unsigned long>(k)) >= from) sum += stats.left_hist[k];
  }
  return sum;
}

Integer count_left_at_most(const MssStats& stats, const Rational& threshold) {
  Integer sum = 0;
  const Integer to = floor_of(threshold);
  for (std::size_t k = 0; k < stats.left_hist.size(); ++k) {
    if (Integer(static_cast<unsigned long>(k)) <= to) sum += stats.left_hist[k];
  }
  return sum;
}

namespace {

class MatchingSearch {
 public:
  MatchingSearch(const BipartiteGraph& g, std::uint64_t budget) : g_(g), budget_(budget) {
    cols_.reserve(g.n());
    for (std::size_t v = 0; v < g.n(); ++v) cols_.push_back(g.column(v));
  }

  bool run(const Bits& avail_left, const Bits& avail_right, std::size_t need) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    if (need == 0) return true;
    if (avail_left.count() < need || avail_right.count() < need) return false;
    const std::size_t u = avail_left.find_first();
    const Bits candidates = g_.row(u) & avail_right;
    for (auto v = candidates.find_first(); v != Bits::npos; v = candidates.find_next(v)) {
      Bits next_left = avail_left - cols_[v];
      Bits next_right = avail_right - g_.row(u);
      chosen_.emplace_back(u, v);
      if (run(next_left, next_right, need - 1)) return true;
      chosen_.pop_back();
      if (exhausted_) return false;
    }
    Bits skip = avail_left;
    skip.reset(u);
    return run(skip, avail_right, need);
  }

  std::uint64_t nodes() const noexcept { return nodes_; }
  bool exhausted() const noexcept { return exhausted_; }
  std::vector<std::pair<std::size_t, std::size_t>>& chosen() noexcept { return chosen_; }

 private:
  const BipartiteGraph& g_;
  std::vector<Bits> cols_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<std::pair<std::size_t, std::size_t>> chosen_;
};

}  // namespace

MatchingResult find_induced_matching(const BipartiteGraph& g, std::size_t k, std::uint64_t budget) {
  if (k == 0) throw RangeError("induced matching size must be at least 1");
  MatchingSearch search(g, budget);
  MatchingResult result;
  const bool found = search.run(full_bits(g.m()), full_bits(g.n()), k);
  result.nodes = search.nodes();
  if (found) {
    result.status = MatchingStatus::Found;
    result.edges = std::move(search.chosen());
  } else {
    result.status = search.exhausted() ? MatchingStatus::BudgetExhausted : MatchingStatus::Absent;
  }
  return result;
}

bool is_induced_matching(const BipartiteGraph& g,
                         const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Bits lefts(g.m()), rights(g.n());
  for (const auto& [u, v] : edges) {
    if (u >= g.m() || v >= g.n() || !g.has_edge(u, v)) return false;
    if (lefts.test(u) || rights.test(v)) return false;
    lefts.set(u);
    rights.set(v);
  }
  for (const auto& [u, v] : edges) {
    for (const auto& [x, y] : edges) {
      if (u != x && g.has_edge(u, y)) return false;
    }
  }
  return true;
}

std::string stats_to_json(const MssStats& stats) {
  auto strings = [](const std::vector<Integer>& values) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& z : values) arr.push_back(z.get_str());
    return arr;
  };
  nlohmann::ordered_json j;
  j["total"] = stats.total.get_str();
  j["left_hist"] = strings(stats.left_hist);
  j["right_hist"] = strings(stats.right_hist);
  j["left_vertex_counts"] = strings(stats.left_vertex_counts);
  j["right_vertex_counts"] = strings(stats.right_vertex_counts);
  return j.dump();
}

std::string verdict_to_json(const ConjectureVerdict& verdict) {
  auto witness = [](const std::optional<Witness>& w) -> nlohmann::ordered_json {
    if (!w) return nullptr;
    nlohmann::ordered_json j;
    j["vertex"] = w->vertex;
    j["fraction"] = to_string(w->fraction);
    return j;
  };
  nlohmann::ordered_json j;
  j["delta"] = to_string(verdict.delta);
  j["satisfied"] = verdict.satisfied;
  j["vacuous"] = verdict.vacuous;
  j["left_witness"] = witness(verdict.left);
  j["right_witness"] = witness(verdict.right);
  return j.dump();
}

}  // namespace ucs
