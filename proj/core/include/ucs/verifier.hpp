#pragma once

#include "ucs/graph.hpp"
#include "ucs/regime.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

/// Seeded Monte Carlo campaigns that hold measured frequencies and means
/// against the closed forms in ucs::analytic.
///
/// Trial t of a campaign with seed s samples its graph from Seed{s, t}; per
/// trial results are stored by index and reduced in index order, so reports
/// are bit-identical for every worker count.
namespace ucs::verifier {

enum class Verdict {
  Consistent,
  Violated,
  Informational,
  Error,  // the point could not be run; see BoundReport::note
};

std::string_view to_string(Verdict v) noexcept;

enum class Engine { Enumeration, BruteForce };

struct CampaignOptions {
  unsigned workers = 1;
  // Campaigns refuse graphs with min(m, n) > 28 or more than 2^26 cells.
  std::uint64_t max_candidates = std::uint64_t{1} << 28;
  Engine engine = Engine::Enumeration;
};

struct LemmaParams {
  std::size_t m = 0;
  std::uint64_t n = 0;
  double p = 0.5;
  double delta = 0.0;
  double nu = 0.5;
  double gamma = 0.75;
  double phi = 0.5;
  double alpha = 0.45;
  std::size_t ell = 0;  // left size / ell* depending on the lemma
  std::size_t r = 0;    // right size / r*
  std::size_t k = 2;    // induced matching size
  // Asymptotic lower bounds are only informational while m + n is below this.
  std::uint64_t size_floor = 64;
  // Strict mode refuses parameters outside a lemma's hypothesis.
  bool strict = true;
};

struct BoundReport {
  std::string lemma_id;
  LemmaParams params;
  double claimed = 0.0;
  double measured = 0.0;
  std::uint64_t trials = 0;
  double ci = 0.0;  // confidence radius
  Verdict verdict = Verdict::Informational;
  std::uint64_t seed = 0;
  std::optional<RegimeTag> regime;
  std::optional<double> reference;  // exact expectation, when one is known
  std::optional<double> threshold;  // the count threshold of the event measured
  std::uint64_t vacuous = 0;        // edgeless samples
  std::vector<std::string> counterexamples;
  std::string note;
};

// Wilson score interval half-width for `successes` out of `trials` at z.
double wilson_radius(std::uint64_t successes, std::uint64_t trials, double z = 4.0);

// Frequency of left-avg(G) <= (1/2 + delta) m.
BoundReport run_average_campaign(std::size_t m, std::size_t n, const EdgeProbability& prob,
                                 double delta, std::uint64_t trials, std::uint64_t seed,
                                 const CampaignOptions& options = {});

// Frequency of ConjectureVerdict::satisfied among non-edgeless samples. Any
// violation is recorded with its serialized graph and marks the report
// Violated.
BoundReport run_conjecture_campaign(std::size_t m, std::size_t n, const EdgeProbability& prob,
                                    double delta, std::uint64_t trials, std::uint64_t seed,
                                    const CampaignOptions& options = {});

std::span<const std::string_view> lemma_ids() noexcept;

// Throws RangeError for an unknown id, HypothesisError for parameters outside
// the lemma's hypothesis in strict mode, CapExceeded when enumeration is
// infeasible.
BoundReport verify_lemma(std::string_view lemma_id, const LemmaParams& params,
                         std::uint64_t trials, std::uint64_t seed,
                         const CampaignOptions& options = {});

struct GridPoint {
  std::size_t m = 0;
  std::size_t n = 0;
  double p = 0.5;
  double delta = 0.0;
};

// CSV with columns m,n,p,delta; an optional header line is skipped.
std::vector<GridPoint> parse_grid(std::string_view text);

// One average campaign per point, in input order, with point i seeded by
// derive_root(root_seed, i). Failures become Verdict::Error rows.
std::vector<BoundReport> sweep(std::span<const GridPoint> grid, std::uint64_t trials,
                               std::uint64_t root_seed, const CampaignOptions& options = {},
                               double alpha = 0.45);

// Column header shared by verify and sweep output.
std::string_view csv_header() noexcept;
std::string report_to_csv_row(const BoundReport& report);
std::string reports_to_csv(std::span<const BoundReport> reports);
std::string report_to_json(const BoundReport& report);

}  // namespace ucs::verifier
