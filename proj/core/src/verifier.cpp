#include "ucs/verifier.hpp"

#include "numeric.hpp"
#include "ucs/analytic.hpp"
#include "ucs/error.hpp"
#include "ucs/mss.hpp"
#include "ucs/parallel.hpp"
#include "ucs/random.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace ucs::verifier {

namespace an = ucs::analytic;
using detail::CompensatedSum;

namespace {

constexpr double kSigmas = 4.0;
// Sampled graphs are stored densely.
constexpr double kMaxCells = 67108864.0;

constexpr std::array<std::string_view, 11> kLemmaIds = {
    "largeleftupper",       "squpperbound",     "indmatchings",
    "superpoly.lower.bound", "lem.hoeffding.exp", "asymptotic.lower.bound",
    "veryverylargeside",    "constrightside",   "mssproba",
    "genupper",             "exp.small.mss",
};

std::size_t min_side(std::size_t m, std::uint64_t n) { return static_cast<std::size_t>(std::min<std::uint64_t>(m, n)); }

void require_storable(std::size_t m, std::uint64_t n) {
  if (static_cast<double>(m) * static_cast<double>(n) > kMaxCells) {
    throw CapExceeded("a " + std::to_string(m) + " x " + std::to_string(n) + " adjacency matrix exceeds 2^26 cells");
  }
}

void require_enumerable(std::size_t m, std::uint64_t n, const CampaignOptions& options) {
  const std::size_t side = min_side(m, n);
  if (side >= 63 || (std::uint64_t{1} << side) > options.max_candidates) {
    throw CapExceeded("enumeration over a side of " + std::to_string(side) + " vertices exceeds the cap of " +
                      std::to_string(options.max_candidates) + " candidates");
  }
  if (options.engine == Engine::BruteForce && m + n > 24) {
    throw CapExceeded("the brute-force engine is limited to m + n <= 24");
  }
  require_storable(m, n);
}

MssStats engine_stats(const BipartiteGraph& g, const CampaignOptions& options) {
  if (options.engine == Engine::BruteForce) return mss_stats_brute_force(g);
  return mss_stats(g, EnumerationOptions{options.max_candidates, 1});
}

// Maximal stable sets with exactly a left and b right vertices.
std::uint64_t engine_joint_count(const BipartiteGraph& g, const CampaignOptions& options, std::size_t a,
                                 std::size_t b) {
  std::uint64_t count = 0;
  if (options.engine == Engine::BruteForce) {
    for (const auto& s : brute_force_mss(g)) count += s.left.count() == a && s.right.count() == b;
  } else {
    for_each_mss(
        g, [&](const Bits& left, const Bits& right) { count += left.count() == a && right.count() == b; },
        EnumerationOptions{options.max_candidates, 1});
  }
  return count;
}

// stab(>= ell*; >= r*) of a concrete graph: sum over X in the smaller side with
// |X| >= its threshold of the number of large enough subsets of the common
// non-neighbourhood on the other side.
double count_stab_at_least(const BipartiteGraph& g0, std::size_t ell_star, std::size_t r_star,
                           const CampaignOptions& options) {
  const bool swapped = g0.n() < g0.m();
  const BipartiteGraph g = swapped ? swap_sides(g0) : g0;
  const std::size_t tx = swapped ? r_star : ell_star;
  const std::size_t ty = swapped ? ell_star : r_star;
  if (g.m() >= 63 || (std::uint64_t{1} << g.m()) > options.max_candidates) {
    throw CapExceeded("stable-set count over 2^" + std::to_string(g.m()) + " subsets exceeds the cap");
  }
  std::vector<double> tail(g.n() + 1, 0.0);
  for (std::size_t k = 0; k <= g.n(); ++k) {
    Integer t = 0;
    for (std::size_t j = ty; j <= k; ++j) t += binomial(k, j);
    tail[k] = t.get_d();
  }
  CompensatedSum sum;
  std::vector<Bits> nbhd(g.m() + 1, Bits(g.n()));
  auto rec = [&](auto& self, std::size_t u, std::size_t size) -> void {
    if (size + (g.m() - u) < tx) return;
    if (u == g.m()) {
      sum.add(tail[g.n() - nbhd[u].count()]);
      return;
    }
    nbhd[u + 1] = nbhd[u];
    self(self, u + 1, size);
    nbhd[u + 1] = nbhd[u] | g.row(u);
    self(self, u + 1, size + 1);
  };
  rec(rec, 0, 0);
  return sum.value();
}

struct Sample {
  double mean = 0.0;
  double sd = 0.0;
};

Sample describe(const std::vector<double>& xs) {
  Sample s;
  if (xs.empty()) return s;
  CompensatedSum sum;
  for (double x : xs) sum.add(x);
  s.mean = sum.value() / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    CompensatedSum sq;
    for (double x : xs) sq.add((x - s.mean) * (x - s.mean));
    s.sd = std::sqrt(sq.value() / static_cast<double>(xs.size() - 1));
  }
  return s;
}

// Runs one event per trial; result[t] is the indicator for trial t.
template <typename Event>
std::uint64_t count_events(std::uint64_t trials, unsigned workers, Event&& event) {
  std::vector<char> hits(trials, 0);
  parallel_for(trials, workers, [&](std::size_t t) { hits[t] = event(t) ? 1 : 0; });
  std::uint64_t total = 0;
  for (char h : hits) total += static_cast<std::uint64_t>(h);
  return total;
}

template <typename Measure>
std::vector<double> collect(std::uint64_t trials, unsigned workers, Measure&& measure) {
  std::vector<double> xs(trials, 0.0);
  parallel_for(trials, workers, [&](std::size_t t) { xs[t] = measure(t); });
  return xs;
}

double binomial_radius(double c, std::uint64_t trials) {
  return kSigmas * std::sqrt(std::max(0.0, c * (1.0 - c)) / static_cast<double>(trials));
}

std::string fmt(double x) { return format_real(x); }

std::optional<RegimeTag> try_classify(std::uint64_t m, std::uint64_t n, double p, double alpha, double delta) {
  try {
    return classify_regime(m, n, EdgeProbability(p), alpha, delta).tag;
  } catch (const Error&) {
    return std::nullopt;
  }
}

BoundReport base_report(std::string_view id, const LemmaParams& params, std::uint64_t trials, std::uint64_t seed) {
  BoundReport r;
  r.lemma_id = std::string(id);
  r.params = params;
  r.trials = trials;
  r.seed = seed;
  if (auto regime = try_classify(params.m, params.n, params.p, params.alpha, std::max(0.0, params.delta))) {
    r.regime = regime;
  }
  return r;
}

// Two-sided agreement of a frequency with an exact probability.
void judge_exact_frequency(BoundReport& r, std::uint64_t hits) {
  r.measured = static_cast<double>(hits) / static_cast<double>(r.trials);
  r.ci = binomial_radius(r.claimed, r.trials);
  r.verdict = std::abs(r.measured - r.claimed) <= r.ci ? Verdict::Consistent : Verdict::Violated;
}

// Frequency that must be at least `claimed`.
void judge_lower_frequency(BoundReport& r, std::uint64_t hits) {
  r.measured = static_cast<double>(hits) / static_cast<double>(r.trials);
  r.ci = wilson_radius(hits, r.trials);
  r.verdict = r.measured + r.ci >= r.claimed ? Verdict::Consistent : Verdict::Violated;
}

void refuse_or_flag(BoundReport& r, bool strict, const std::string& why) {
  if (strict) throw HypothesisError(r.lemma_id + ": " + why);
  r.note += (r.note.empty() ? "" : "; ") + ("outside hypothesis: " + why);
}

BoundReport verify_mssproba(const LemmaParams& lp, std::uint64_t trials, std::uint64_t seed, const CampaignOptions& o) {
  const EdgeProbability prob(lp.p);
  auto r = base_report("mssproba", lp, trials, seed);
  r.claimed = an::pr_maximal_stable(lp.m, lp.n, prob, lp.ell, lp.r);
  StableSet s{Bits(lp.m), Bits(lp.n)};
  for (std::size_t u = 0; u < lp.ell; ++u) s.left.set(u);
  for (std::size_t v = 0; v < lp.r; ++v) s.right.set(v);
  const auto hits = count_events(trials, o.workers, [&](std::size_t t) {
    return is_maximal_stable(sample_bipartite(lp.m, lp.n, prob, Seed{seed, t}), s);
  });
  judge_exact_frequency(r, hits);
  r.note = "fixed set: first " + std::to_string(lp.ell) + " left and first " + std::to_string(lp.r) + " right vertices";
  return r;
}

BoundReport verify_genupper(const LemmaParams& lp, std::uint64_t trials, std::uint64_t seed, const CampaignOptions& o) {
  const EdgeProbability prob(lp.p);
  prob.require_proper();
  auto r = base_report("genupper", lp, trials, seed);
  bool in_hypothesis = true;
  try {
    r.claimed = an::genupper_bound(lp.m, lp.n, prob, lp.ell, lp.r);
  } catch (const HypothesisError& e) {
    refuse_or_flag(r, lp.strict, e.what());
    in_hypothesis = false;
    const double z = static_cast<double>(lp.n) * std::pow(prob.q(), static_cast<double>(lp.ell));
    r.claimed = std::exp2(static_cast<double>(lp.m + 1)) * std::pow(z, static_cast<double>(lp.r));
  }
  r.reference = an::expected_stab_at_least(lp.m, lp.n, prob, lp.ell, lp.r);
  const auto xs = collect(trials, o.workers, [&](std::size_t t) {
    return count_stab_at_least(sample_bipartite(lp.m, lp.n, prob, Seed{seed, t}), lp.ell, lp.r, o);
  });
  const Sample s = describe(xs);
  r.measured = s.mean;
  r.ci = kSigmas * s.sd / std::sqrt(static_cast<double>(trials));
  const bool matches_exact = std::abs(r.measured - *r.reference) <= r.ci;
  const bool below_bound = r.measured <= r.claimed + r.ci;
  if (!matches_exact) {
    r.verdict = Verdict::Violated;
  } else if (!in_hypothesis) {
    r.verdict = Verdict::Informational;
  } else {
    r.verdict = below_bound ? Verdict::Consistent : Verdict::Violated;
  }
  r.note += (r.note.empty() ? "" : "; ") + std::string("reference is the exact expectation");
  return r;
}

BoundReport verify_constrightside(const LemmaParams& lp, std::uint64_t trials, std::uint64_t seed,
                                  const CampaignOptions& o) {
  const EdgeProbability prob(lp.p);
  auto r = base_report("constrightside", lp, trials, seed);
  r.claimed = an::dominating_vertex_prob(lp.m, lp.n, prob);
  const auto hits = count_events(trials, o.workers, [&](std::size_t t) {
    const auto g = sample_bipartite(lp.m, lp.n, prob, Seed{seed, t});
    for (std::size_t u = 0; u < g.m(); ++u) {
      if (g.row(u).all()) return true;
    }
    return false;
  });
  judge_exact_frequency(r, hits);
  r.note = "event: some left vertex is adjacent to all of R";
  return r;
}

BoundReport verify_indmatchings(const LemmaParams& lp, std::uint64_t trials, std::uint64_t seed,
                                const CampaignOptions& o) {
  const EdgeProbability prob(lp.p);
  if (lp.k == 0 || lp.k > lp.m || lp.k > lp.n) throw RangeError("indmatchings needs 1 <= k <= min(m, n)");
  auto r = base_report("indmatchings", lp, trials, seed);
  r.claimed = an::induced_matching_prob(lp.k, prob);
  std::vector<char> block(trials, 0), anywhere(trials, 0), exhausted(trials, 0);
  parallel_for(trials, o.workers, [&](std::size_t t) {
    const auto g = sample_bipartite(lp.m, lp.n, prob, Seed{seed, t});
    // The k x k block is an induced perfect matching iff it is a permutation matrix.
    std::vector<int> column_hits(lp.k, 0);
    bool perfect = true;
    for (std::size_t u = 0; u < lp.k && perfect; ++u) {
      int row_hits = 0;
      for (std::size_t v = 0; v < lp.k; ++v) {
        if (g.has_edge(u, v)) {
          ++row_hits;
          ++column_hits[v];
        }
      }
      perfect = row_hits == 1;
    }
    perfect = perfect && std::all_of(column_hits.begin(), column_hits.end(), [](int c) { return c == 1; });
    block[t] = perfect;
    const auto found = find_induced_matching(g, lp.k);
    anywhere[t] = found.status == MatchingStatus::Found;
    exhausted[t] = found.status == MatchingStatus::BudgetExhausted;
  });
  std::uint64_t hits = 0, any = 0, lost = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    hits += static_cast<std::uint64_t>(block[t]);
    any += static_cast<std::uint64_t>(anywhere[t]);
    lost += static_cast<std::uint64_t>(exhausted[t]);
  }
  judge_exact_frequency(r, hits);
  r.note = "fixed " + std::to_string(lp.k) + "x" + std::to_string(lp.k) +
           " block; frequency of any induced matching of that size " +
           fmt(static_cast<double>(any) / static_cast<double>(trials));
  if (lost > 0) r.note += " (" + std::to_string(lost) + " searches hit the node budget)";
  return r;
}

BoundReport verify_veryverylargeside(const LemmaParams& lp, std::uint64_t trials, std::uint64_t seed,
                                     const CampaignOptions& o) {
  const EdgeProbability prob(lp.p);
  if (lp.n < lp.m) throw RangeError("veryverylargeside needs n >= m");
  require_enumerable(lp.m, lp.n, o);
  auto r = base_report("veryverylargeside", lp, trials, seed);
  r.claimed = an::saturation_lower(lp.m, lp.n, prob);
  Integer full;
  mpz_ui_pow_ui(full.get_mpz_t(), 2, static_cast<unsigned long>(lp.m));
  r.threshold = full.get_d();
  std::vector<char> saturated(trials, 0), halved(trials, 0);
  const Rational half_m(static_cast<unsigned long>(lp.m), 2);
  parallel_for(trials, o.workers, [&](std::size_t t) {
    const auto stats = engine_stats(sample_bipartite(lp.m, lp.n, prob, Seed{seed, t}), o);
    saturated[t] = stats.total == full;
    halved[t] = left_avg(stats) == half_m;
  });
  std::uint64_t hits = 0, avg_hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    hits += static_cast<std::uint64_t>(saturated[t]);
    avg_hits += static_cast<std::uint64_t>(halved[t]);
  }
  judge_lower_frequency(r, hits);
  r.note = "event: total = 2^m; left-avg = m/2 in " + std::to_string(avg_hits) + " of " + std::to_string(trials);
  return r;
}

// Pr[count > threshold] <= E[stab(>= ell*; >= r*)] / (threshold - #right sides below r*), by Markov.
struct LargeLeftClaim {
  double claimed = 1.0;
  bool valid = false;
  double expectation = 0.0;
};

LargeLeftClaim large_left_claim(const LemmaParams& lp, const EdgeProbability& prob, std::size_t ell_star,
                                std::size_t r_star, double threshold) {
  LargeLeftClaim c;
  c.expectation = r_star > lp.n ? 0.0 : an::expected_stab_at_least(lp.m, lp.n, prob, ell_star, r_star);
  Integer below = 0;
  for (std::size_t k = 0; k < r_star && k <= lp.n; ++k) below += binomial(lp.n, k);
  const double slack = threshold - below.get_d();
  c.valid = slack > 0.0;
  if (c.valid) c.claimed = std::max(0.0, 1.0 - c.expectation / slack);
  return c;
}

BoundReport verify_count_upper(std::string_view id, const LemmaParams& lp, std::uint64_t trials, std::uint64_t seed,
                               const CampaignOptions& o, const Rational& left_fraction, std::size_t r_star,
                               double threshold) {
  const EdgeProbability prob(lp.p);
  require_enumerable(lp.m, lp.n, o);
  auto r = base_report(id, lp, trials, seed);
  r.threshold = threshold;
  const Rational left_min = left_fraction * Rational(static_cast<unsigned long>(lp.m));
  const auto ell_star = static_cast<std::size_t>(ceil_of(left_min).get_ui());
  const auto claim = large_left_claim(lp, prob, ell_star, r_star, threshold);
  r.claimed = claim.claimed;
  r.reference = claim.expectation;
  const auto hits = count_events(trials, o.workers, [&](std::size_t t) {
    const auto stats = engine_stats(sample_bipartite(lp.m, lp.n, prob, Seed{seed, t}), o);
    return count_left_at_least(stats, left_min).get_d() <= threshold;
  });
  judge_lower_frequency(r, hits);
  std::string note = "r* = " + std::to_string(r_star) + ", reference = E[stab(>= " + std::to_string(ell_star) +
                     "; >= r*)]";
  if (!claim.valid) {
    r.verdict = Verdict::Informational;
    note += "; small right sides alone may exceed the threshold, no finite-size claim";
  }
  r.note = r.note.empty() ? note : r.note + "; " + note;
  return r;
}

BoundReport verify_largeleftupper(const LemmaParams& lp, std::uint64_t trials, std::uint64_t seed,
                                  const CampaignOptions& o) {
  const EdgeProbability prob(lp.p);
  const auto consts = an::fixed_constants(prob);
  const auto rp = an::RegimeParams::make(lp.m, lp.n, prob);
  BoundReport flags = base_report("largeleftupper", lp, trials, seed);
  if (rp.log_m < std::pow(static_cast<double>(lp.n), 0.2)) {
    refuse_or_flag(flags, lp.strict, "needs m >= q^(-n^(1/5))");
  }
  const double threshold = std::pow(static_cast<double>(lp.n), static_cast<double>(consts.r_star));
  auto r = verify_count_upper("largeleftupper", lp, trials, seed, o, Rational(1, 3),
                              static_cast<std::size_t>(consts.r_star), threshold);
  if (!flags.note.empty()) r.note = flags.note + "; " + r.note;
  return r;
}

BoundReport verify_squpperbound(const LemmaParams& lp, std::uint64_t trials, std::uint64_t seed,
                                const CampaignOptions& o) {
  const EdgeProbability prob(lp.p);
  const auto rp = an::RegimeParams::make(lp.m, lp.n, prob);
  if (!(lp.alpha > 0.0 && lp.alpha < 0.5)) throw RangeError("squpperbound needs 0 < alpha < 1/2");
  BoundReport flags = base_report("squpperbound", lp, trials, seed);
  if (rp.log_n > lp.alpha * static_cast<double>(lp.m)) refuse_or_flag(flags, lp.strict, "needs n <= q^(-alpha m)");
  const long long floor_x = an::floor_snapped(an::squpper_exponent(prob));
  auto r = verify_count_upper("squpperbound", lp, trials, seed, o, Rational(1, 2),
                              static_cast<std::size_t>(floor_x + 1), an::squpper_threshold(lp.n, prob));
  if (!flags.note.empty()) r.note = flags.note + "; " + r.note;
  return r;
}

// a = floor(log_{1/q} n), b = floor(log_{1/q} m) when both fit in the graph.
std::pair<std::size_t, std::size_t> small_sides(const LemmaParams& lp, const an::RegimeParams& rp) {
  if (rp.a < 0 || rp.b < 0 || static_cast<std::uint64_t>(rp.a) > lp.m || static_cast<std::uint64_t>(rp.b) > lp.n) {
    throw HypothesisError("small sides (a, b) do not fit in the graph");
  }
  return {static_cast<std::size_t>(rp.a), static_cast<std::size_t>(rp.b)};
}

BoundReport verify_superpoly(const LemmaParams& lp, std::uint64_t trials, std::uint64_t seed, const CampaignOptions& o) {
  const EdgeProbability prob(lp.p);
  require_enumerable(lp.m, lp.n, o);
  const auto rp = an::RegimeParams::make(lp.m, lp.n, prob);
  const auto sides = small_sides(lp, rp);
  const std::size_t a = sides.first;
  const std::size_t b = sides.second;
  auto r = base_report("superpoly.lower.bound", lp, trials, seed);
  const double e = an::expected_small_mss(lp.m, lp.n, prob, a, b);
  if (!(e > 0.0)) throw HypothesisError("E[S_G] vanishes");
  r.reference = e;
  r.threshold = e / 2.0;
  CompensatedSum pairs;
  double worst = 0.0;
  for (std::size_t i = 0; i <= a; ++i) {
    for (std::size_t j = 0; j <= b; ++j) {
      const double bij = an::pair_expectation_B({i, j, a, b}, lp.m, lp.n, prob);
      pairs.add(bij);
      if (i + j >= 1) worst = std::max(worst, static_cast<double>((a + 1) * (b + 1)) * bij / (e * e));
    }
  }
  const double excess = (pairs.value() - e * e) / (e * e);
  r.claimed = std::max(0.0, 1.0 - 4.0 * excess);
  const auto hits = count_events(trials, o.workers, [&](std::size_t t) {
    const auto g = sample_bipartite(lp.m, lp.n, prob, Seed{seed, t});
    return static_cast<double>(engine_joint_count(g, o, a, b)) > e / 2.0;
  });
  judge_lower_frequency(r, hits);
  r.note = "a = " + std::to_string(a) + ", b = " + std::to_string(b) + ", B00/E^2 = " +
           fmt(an::pair_expectation_B({0, 0, a, b}, lp.m, lp.n, prob) / (e * e)) +
           ", max (a+1)(b+1)Bij/E^2 = " + fmt(worst);
  if (r.claimed == 0.0) r.note += "; Chebyshev bound vacuous at this size";
  return r;
}

BoundReport verify_exp_small_mss(const LemmaParams& lp, std::uint64_t trials, std::uint64_t seed,
                                 const CampaignOptions& o) {
  const EdgeProbability prob(lp.p);
  require_enumerable(lp.m, lp.n, o);
  const auto rp = an::RegimeParams::make(lp.m, lp.n, prob);
  auto r = base_report("exp.small.mss", lp, trials, seed);
  bool in_hypothesis = true;
  try {
    const auto lower = an::exp_small_mss_lower(rp);
    r.claimed = lower.value;
    if (lower.degenerate) r.note = "0^0 read as 1";
  } catch (const RangeError& e) {
    refuse_or_flag(r, lp.strict, e.what());
    in_hypothesis = false;
  }
  const auto sides = small_sides(lp, rp);
  const std::size_t a = sides.first;
  const std::size_t b = sides.second;
  r.reference = an::expected_small_mss(lp.m, lp.n, prob, a, b);
  const auto xs = collect(trials, o.workers, [&](std::size_t t) {
    return static_cast<double>(engine_joint_count(sample_bipartite(lp.m, lp.n, prob, Seed{seed, t}), o, a, b));
  });
  const Sample s = describe(xs);
  r.measured = s.mean;
  r.ci = kSigmas * s.sd / std::sqrt(static_cast<double>(trials));
  const bool matches_exact = std::abs(r.measured - *r.reference) <= r.ci;
  const bool above_bound = r.measured + r.ci >= r.claimed;
  if (!matches_exact) {
    r.verdict = Verdict::Violated;
  } else if (!in_hypothesis || lp.m + lp.n < lp.size_floor) {
    r.verdict = Verdict::Informational;
    if (in_hypothesis && !above_bound) r.note += (r.note.empty() ? "" : "; ") + std::string("below size floor");
  } else {
    r.verdict = above_bound ? Verdict::Consistent : Verdict::Violated;
  }
  r.note += (r.note.empty() ? "" : "; ") + std::string("reference is the exact expectation");
  return r;
}

// Frequency of S'_G >= threshold, where S'_G counts maximal stable sets with a' left vertices.
BoundReport verify_hoeffding_count(std::string_view id, const LemmaParams& lp, std::uint64_t trials,
                                   std::uint64_t seed, const CampaignOptions& o, const an::RegimeParams& rp,
                                   double threshold) {
  const EdgeProbability prob(lp.p);
  require_enumerable(lp.m, lp.n, o);
  auto r = base_report(id, lp, trials, seed);
  r.claimed = 1.0;
  r.threshold = threshold;
  const auto a_prime = static_cast<std::size_t>(*rp.a_prime);
  const auto hits = count_events(trials, o.workers, [&](std::size_t t) {
    if (a_prime > lp.m) return 0.0 >= threshold;
    const auto stats = engine_stats(sample_bipartite(lp.m, lp.n, prob, Seed{seed, t}), o);
    return stats.left_hist[a_prime].get_d() >= threshold;
  });
  r.measured = static_cast<double>(hits) / static_cast<double>(trials);
  r.ci = wilson_radius(hits, trials);
  r.verdict = Verdict::Informational;
  r.note = "a' = " + std::to_string(a_prime) + "; asymptotic statement, no finite-size claim";
  return r;
}

an::RegimeParams with_a_prime(const LemmaParams& lp) {
  const auto rp = an::RegimeParams::make(lp.m, lp.n, EdgeProbability(lp.p));
  if (!rp.a_prime || *rp.a_prime < 0) throw HypothesisError("a' is undefined: n < m^(log_{1/q} m)");
  return rp;
}

BoundReport verify_hoeffding_exp(const LemmaParams& lp, std::uint64_t trials, std::uint64_t seed,
                                 const CampaignOptions& o) {
  const auto rp = with_a_prime(lp);
  BoundReport flags = base_report("lem.hoeffding.exp", lp, trials, seed);
  if (rp.log_n < 2.0 * rp.log_k || rp.log_n > static_cast<double>(lp.m)) {
    refuse_or_flag(flags, lp.strict, "needs m^(2 log_{1/q} m) <= n <= q^(-m)");
  }
  auto r = verify_hoeffding_count("lem.hoeffding.exp", lp, trials, seed, o, rp, an::hoeffding_exp_threshold(rp));
  if (!flags.note.empty()) r.note = flags.note + "; " + r.note;
  return r;
}

BoundReport verify_asymptotic_lower(const LemmaParams& lp, std::uint64_t trials, std::uint64_t seed,
                                    const CampaignOptions& o) {
  const auto rp = with_a_prime(lp);
  BoundReport flags = base_report("asymptotic.lower.bound", lp, trials, seed);
  const double md = static_cast<double>(lp.m);
  if (rp.log_n < md / 16.0 || rp.log_n > md / 2.0) refuse_or_flag(flags, lp.strict, "needs q^(-m/16) <= n <= q^(-m/2)");
  if (!(rp.lambda > 0.0 && rp.lambda < 1.0)) throw HypothesisError("lambda must lie in (0, 1)");
  auto r = verify_hoeffding_count("asymptotic.lower.bound", lp, trials, seed, o, rp,
                                  an::asymptotic_lower_threshold(rp, lp.phi));
  if (!flags.note.empty()) r.note = flags.note + "; " + r.note;
  return r;
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Violated: return "violated";
    case Verdict::Informational: return "informational";
    case Verdict::Error: return "error";
  }
  return "error";
}

double wilson_radius(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return 1.0;
  const double t = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / t;
  const double denom = 1.0 + z * z / t;
  const double center = (phat + z * z / (2.0 * t)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / t + z * z / (4.0 * t * t)) / denom;
  // Distance from the point estimate to the farther Wilson endpoint.
  return std::abs(center - phat) + half;
}

namespace {

void check_campaign(std::size_t m, std::size_t n, std::uint64_t trials, const CampaignOptions& options) {
  if (m == 0 || n == 0) throw ZeroSideError("both sides of a bipartite graph must be nonempty");
  if (trials == 0) throw RangeError("at least one trial is required");
  require_enumerable(m, n, options);
}

LemmaParams campaign_params(std::size_t m, std::size_t n, const EdgeProbability& prob, double delta) {
  LemmaParams lp;
  lp.m = m;
  lp.n = n;
  lp.p = prob.p();
  lp.delta = delta;
  return lp;
}

}  // namespace

BoundReport run_average_campaign(std::size_t m, std::size_t n, const EdgeProbability& prob, double delta,
                                 std::uint64_t trials, std::uint64_t seed, const CampaignOptions& options) {
  check_campaign(m, n, trials, options);
  auto r = base_report("left-avg", campaign_params(m, n, prob, delta), trials, seed);
  const Rational bound = (Rational(1, 2) + exact_decimal(delta)) * Rational(static_cast<unsigned long>(m));
  r.threshold = bound.get_d();
  const auto hits = count_events(trials, options.workers, [&](std::size_t t) {
    return left_avg(engine_stats(sample_bipartite(m, n, prob, Seed{seed, t}), options)) <= bound;
  });
  r.claimed = 1.0;
  r.measured = static_cast<double>(hits) / static_cast<double>(trials);
  r.ci = wilson_radius(hits, trials);
  r.verdict = Verdict::Informational;
  r.note = "event: left-avg <= (1/2 + delta) m";
  return r;
}

BoundReport run_conjecture_campaign(std::size_t m, std::size_t n, const EdgeProbability& prob, double delta,
                                    std::uint64_t trials, std::uint64_t seed, const CampaignOptions& options) {
  check_campaign(m, n, trials, options);
  if (!(delta >= 0.0)) throw RangeError("delta must be nonnegative");
  auto r = base_report("conjecture", campaign_params(m, n, prob, delta), trials, seed);
  const Rational exact_delta = exact_decimal(delta);
  enum Outcome : char { Vacuous, Satisfied, Failed };
  std::vector<char> outcome(trials, Vacuous);
  parallel_for(trials, options.workers, [&](std::size_t t) {
    const auto g = sample_bipartite(m, n, prob, Seed{seed, t});
    if (g.edgeless()) return;
    outcome[t] = conjecture_verdict(engine_stats(g, options), exact_delta, false).satisfied ? Satisfied : Failed;
  });
  std::uint64_t satisfied = 0, checked = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    if (outcome[t] == Vacuous) {
      ++r.vacuous;
      continue;
    }
    ++checked;
    if (outcome[t] == Satisfied) {
      ++satisfied;
    } else {
      r.counterexamples.push_back(serialize_graph(sample_bipartite(m, n, prob, Seed{seed, t})));
    }
  }
  r.claimed = 1.0;
  r.measured = checked == 0 ? 1.0 : static_cast<double>(satisfied) / static_cast<double>(checked);
  r.ci = wilson_radius(satisfied, checked);
  r.verdict = r.counterexamples.empty() ? Verdict::Consistent : Verdict::Violated;
  r.note = std::to_string(r.vacuous) + " edgeless samples skipped";
  if (!r.counterexamples.empty()) r.note += "; " + std::to_string(r.counterexamples.size()) + " violations";
  return r;
}

std::span<const std::string_view> lemma_ids() noexcept { return kLemmaIds; }

BoundReport verify_lemma(std::string_view lemma_id, const LemmaParams& params, std::uint64_t trials,
                         std::uint64_t seed, const CampaignOptions& options) {
  using Runner = BoundReport (*)(const LemmaParams&, std::uint64_t, std::uint64_t, const CampaignOptions&);
  static constexpr std::pair<std::string_view, Runner> kRunners[] = {
      {"largeleftupper", verify_largeleftupper},
      {"squpperbound", verify_squpperbound},
      {"indmatchings", verify_indmatchings},
      {"superpoly.lower.bound", verify_superpoly},
      {"lem.hoeffding.exp", verify_hoeffding_exp},
      {"asymptotic.lower.bound", verify_asymptotic_lower},
      {"veryverylargeside", verify_veryverylargeside},
      {"constrightside", verify_constrightside},
      {"mssproba", verify_mssproba},
      {"genupper", verify_genupper},
      {"exp.small.mss", verify_exp_small_mss},
  };
  for (const auto& [id, run] : kRunners) {
    if (id != lemma_id) continue;
    if (params.m == 0 || params.n == 0) throw ZeroSideError("both sides of a bipartite graph must be nonempty");
    if (trials == 0) throw RangeError("at least one trial is required");
    EdgeProbability(params.p).require_proper();
    require_storable(params.m, params.n);
    return run(params, trials, seed, options);
  }
  throw RangeError("unknown lemma id '" + std::string(lemma_id) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  text = trim(text);
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return !text.empty() && ec == std::errc{} && ptr == end;
}

}  // namespace

std::vector<GridPoint> parse_grid(std::string_view text) {
  std::vector<GridPoint> grid;
  std::size_t line_no = 0;
  bool seen_row = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields;
    for (std::string_view rest = line;;) {
      const auto comma = rest.find(',');
      fields.push_back(trim(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    const auto bad = [&](const std::string& why) {
      return ParseError(ParseErrorKind::MalformedGrid, "grid line " + std::to_string(line_no) + ": " + why);
    };
    if (!seen_row && fields.size() == 4 && fields[0] == "m" && fields[1] == "n" && fields[2] == "p" &&
        fields[3] == "delta") {
      seen_row = true;
      continue;
    }
    seen_row = true;
    if (fields.size() != 4) throw bad("expected 4 fields m,n,p,delta");
    GridPoint pt;
    if (!parse_number(fields[0], pt.m) || !parse_number(fields[1], pt.n)) throw bad("m and n must be integers");
    if (!parse_number(fields[2], pt.p) || !parse_number(fields[3], pt.delta)) throw bad("p and delta must be reals");
    grid.push_back(pt);
  }
  return grid;
}

std::vector<BoundReport> sweep(std::span<const GridPoint> grid, std::uint64_t trials, std::uint64_t root_seed,
                               const CampaignOptions& options, double alpha) {
  std::vector<BoundReport> reports;
  reports.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& pt = grid[i];
    const std::uint64_t seed = derive_root(root_seed, i);
    BoundReport r;
    try {
      r = run_average_campaign(pt.m, pt.n, EdgeProbability(pt.p), pt.delta, trials, seed, options);
    } catch (const Error& e) {
      r = BoundReport{};
      r.lemma_id = "left-avg";
      r.params.m = pt.m;
      r.params.n = pt.n;
      r.params.p = pt.p;
      r.params.delta = pt.delta;
      r.trials = trials;
      r.seed = seed;
      r.verdict = Verdict::Error;
      r.measured = std::nan("");
      r.claimed = 1.0;
      r.ci = std::nan("");
      r.note = e.what();
    }
    r.params.alpha = alpha;
    r.regime = try_classify(pt.m, pt.n, pt.p, alpha, std::max(0.0, pt.delta));
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace ucs::verifier
