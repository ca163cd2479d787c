#include "cli.hpp"

#include "CLI11.hpp"
#include "json.hpp"
#include "ucs/analytic.hpp"
#include "ucs/error.hpp"
#include "ucs/graph.hpp"
#include "ucs/mss.hpp"
#include "ucs/parallel.hpp"
#include "ucs/rational.hpp"
#include "ucs/regime.hpp"
#include "ucs/setfamily.hpp"
#include "ucs/verifier.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

namespace ucs::cli {

namespace {

using json = nlohmann::ordered_json;
namespace vf = ucs::verifier;

// Input file missing or output not writable.
struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string command;
  std::string lemma;
  std::string input;
  std::size_t m = 0;
  std::uint64_t n = 0;
  double p = 0.5;
  double delta = 0.0;
  double alpha = 0.45;
  double nu = 0.5;
  double gamma = 0.75;
  double phi = 0.5;
  std::size_t ell = 0;
  std::size_t r = 0;
  std::size_t k = 2;
  std::uint64_t trials = 1000;
  std::optional<std::uint64_t> seed;
  std::string format = "table";
  std::string output;
  unsigned cap = 28;
  unsigned workers = 0;
  std::uint64_t size_floor = 64;
  bool informational = false;
  bool closure = false;
  bool brute_force = false;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const Config& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file || !(file << text) || !file.flush()) throw IoFailure("cannot write '" + cfg.output + "'");
}

std::uint64_t resolve_seed(const Config& cfg) {
  if (cfg.seed) return *cfg.seed;
  const char* env = std::getenv("UCS_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t value = 0;
  const std::string_view text(env);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw RangeError("UCS_SEED is not an unsigned integer: '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t cap_candidates(const Config& cfg) {
  if (cfg.cap > 62) throw RangeError("--cap must be at most 62");
  return std::uint64_t{1} << cfg.cap;
}

// Resolved configuration, echoed at the top of machine output. The worker
// count is left out on purpose: it never changes results.
json config_echo(const Config& cfg, std::uint64_t seed) {
  json j;
  j["command"] = cfg.command;
  if (cfg.command == "verify") j["lemma"] = cfg.lemma;
  if (!cfg.input.empty()) j["input"] = cfg.input;
  if (cfg.command == "verify" || cfg.command == "regime" || cfg.command == "sample") {
    j["m"] = cfg.m;
    j["n"] = cfg.n;
    j["p"] = cfg.p;
  }
  if (cfg.command == "verify" || cfg.command == "regime" || cfg.command == "stats" || cfg.command == "sweep") {
    j["delta"] = cfg.delta;
  }
  if (cfg.command == "verify" || cfg.command == "regime" || cfg.command == "sweep") j["alpha"] = cfg.alpha;
  if (cfg.command == "verify") {
    j["nu"] = cfg.nu;
    j["gamma"] = cfg.gamma;
    j["phi"] = cfg.phi;
    j["l"] = cfg.ell;
    j["r"] = cfg.r;
    j["k"] = cfg.k;
    j["size_floor"] = cfg.size_floor;
    j["strict"] = !cfg.informational;
  }
  if (cfg.command == "regime") j["phi"] = cfg.phi;
  if (cfg.command == "verify" || cfg.command == "sweep") {
    j["trials"] = cfg.trials;
    j["engine"] = cfg.brute_force ? "brute-force" : "enumeration";
  }
  if (cfg.command == "frankl") j["closure"] = cfg.closure;
  j["seed"] = seed;
  j["format"] = cfg.format;
  j["cap"] = cfg.cap;
  return j;
}

std::string echo_line(const json& echo) {
  std::string line = "# config:";
  for (const auto& [key, value] : echo.items()) {
    line += ' ';
    line += key;
    line += '=';
    line += value.is_string() ? value.get<std::string>() : value.dump();
  }
  return line + '\n';
}

std::string hist_text(const std::vector<Integer>& hist) {
  std::string s;
  for (std::size_t i = 0; i < hist.size(); ++i) {
    if (i) s += ' ';
    s += hist[i].get_str();
  }
  return s;
}

std::string witness_text(const std::optional<Witness>& w) {
  if (!w) return "none";
  return std::to_string(w->vertex) + " (" + to_string(w->fraction) + ")";
}

// --- sample ---------------------------------------------------------------

std::string cmd_sample(const Config& cfg, std::uint64_t seed) {
  const auto g = sample_bipartite(cfg.m, cfg.n, EdgeProbability(cfg.p), Seed{seed, 0});
  if (cfg.format == "json") return graph_to_json(g) + '\n';
  return serialize_graph(g);
}

// --- stats ----------------------------------------------------------------

std::string cmd_stats(const Config& cfg, std::uint64_t seed) {
  const auto g = parse_graph(read_input(cfg.input));
  const EnumerationOptions opts{cap_candidates(cfg), cfg.workers};
  const auto stats = mss_stats(g, opts);
  const auto verdict = conjecture_verdict(stats, exact_decimal(cfg.delta), g.edgeless());
  const auto avg = left_avg(stats);
  const auto echo = config_echo(cfg, seed);

  if (cfg.format == "json") {
    json j;
    j["config"] = echo;
    j["m"] = g.m();
    j["n"] = g.n();
    j["stats"] = json::parse(stats_to_json(stats));
    j["left_avg"] = to_string(avg);
    j["verdict"] = json::parse(verdict_to_json(verdict));
    return j.dump() + '\n';
  }
  std::string s;
  if (cfg.format == "csv") {
    s = echo_line(echo);
    s += "key,value\n";
    s += "m," + std::to_string(g.m()) + '\n';
    s += "n," + std::to_string(g.n()) + '\n';
    s += "total," + stats.total.get_str() + '\n';
    s += "left_hist," + hist_text(stats.left_hist) + '\n';
    s += "right_hist," + hist_text(stats.right_hist) + '\n';
    s += "left_avg," + to_string(avg) + '\n';
    s += "left_witness," + witness_text(verdict.left) + '\n';
    s += "right_witness," + witness_text(verdict.right) + '\n';
    s += std::string("satisfied,") + (verdict.satisfied ? "true" : "false") + '\n';
    s += std::string("vacuous,") + (verdict.vacuous ? "true" : "false") + '\n';
    return s;
  }
  s = "graph          " + std::to_string(g.m()) + " x " + std::to_string(g.n()) + ", " +
      std::to_string(g.edge_count()) + " edges\n";
  s += "total          " + stats.total.get_str() + '\n';
  s += "left sizes     " + hist_text(stats.left_hist) + '\n';
  s += "right sizes    " + hist_text(stats.right_hist) + '\n';
  s += "left-avg       " + to_string(avg) + " (" + format_real(avg.get_d()) + ")\n";
  s += "left witness   " + witness_text(verdict.left) + '\n';
  s += "right witness  " + witness_text(verdict.right) + '\n';
  s += "verdict        ";
  s += verdict.vacuous ? "vacuous (edgeless graph)" : (verdict.satisfied ? "satisfied" : "violated");
  s += " at delta " + to_string(verdict.delta) + '\n';
  return s;
}

// --- verify and sweep -----------------------------------------------------

vf::CampaignOptions campaign_options(const Config& cfg) {
  vf::CampaignOptions o;
  o.workers = cfg.workers;
  o.max_candidates = cap_candidates(cfg);
  o.engine = cfg.brute_force ? vf::Engine::BruteForce : vf::Engine::Enumeration;
  return o;
}

std::string report_table(const vf::BoundReport& r) {
  std::ostringstream s;
  auto row = [&](std::string_view key, const std::string& value) {
    s << std::left << std::setw(12) << key << value << '\n';
  };
  row("lemma", r.lemma_id);
  row("m, n, p", std::to_string(r.params.m) + ", " + std::to_string(r.params.n) + ", " + format_real(r.params.p));
  row("regime", r.regime ? std::string(to_string(*r.regime)) : "-");
  row("trials", std::to_string(r.trials));
  row("claimed", format_real(r.claimed));
  row("measured", format_real(r.measured) + " +/- " + format_real(r.ci));
  if (r.reference) row("reference", format_real(*r.reference));
  if (r.threshold) row("threshold", format_real(*r.threshold));
  row("verdict", std::string(vf::to_string(r.verdict)));
  row("seed", std::to_string(r.seed));
  if (!r.note.empty()) row("note", r.note);
  for (const auto& g : r.counterexamples) s << "counterexample:\n" << g;
  return s.str();
}

std::string reports_table(const std::vector<vf::BoundReport>& reports) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"m", "n", "p", "delta", "regime", "measured", "ci", "verdict"});
  for (const auto& r : reports) {
    rows.push_back({std::to_string(r.params.m), std::to_string(r.params.n), format_real(r.params.p),
                    format_real(r.params.delta), r.regime ? std::string(to_string(*r.regime)) : "-",
                    format_real(r.measured), format_real(r.ci), std::string(vf::to_string(r.verdict))});
  }
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream s;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      s << std::left << std::setw(static_cast<int>(width[c] + (c + 1 < row.size() ? 2 : 0))) << row[c];
    }
    s << '\n';
  }
  for (const auto& r : reports) {
    if (r.verdict == vf::Verdict::Error) s << "error at m=" << r.params.m << " n=" << r.params.n << ": " << r.note << '\n';
  }
  return s.str();
}

std::string render_reports(const Config& cfg, const json& echo, const std::vector<vf::BoundReport>& reports) {
  if (cfg.format == "csv") return echo_line(echo) + vf::reports_to_csv(reports);
  if (cfg.format == "json") {
    json j;
    j["config"] = echo;
    auto arr = json::array();
    for (const auto& r : reports) arr.push_back(json::parse(vf::report_to_json(r)));
    j["reports"] = std::move(arr);
    return j.dump() + '\n';
  }
  if (cfg.command == "verify") return report_table(reports.front());
  return reports_table(reports);
}

std::string cmd_verify(const Config& cfg, std::uint64_t seed) {
  vf::LemmaParams lp;
  lp.m = cfg.m;
  lp.n = cfg.n;
  lp.p = cfg.p;
  lp.delta = cfg.delta;
  lp.nu = cfg.nu;
  lp.gamma = cfg.gamma;
  lp.phi = cfg.phi;
  lp.alpha = cfg.alpha;
  lp.ell = cfg.ell;
  lp.r = cfg.r;
  lp.k = cfg.k;
  lp.size_floor = cfg.size_floor;
  lp.strict = !cfg.informational;
  const auto report = vf::verify_lemma(cfg.lemma, lp, cfg.trials, seed, campaign_options(cfg));
  return render_reports(cfg, config_echo(cfg, seed), {report});
}

std::string cmd_sweep(const Config& cfg, std::uint64_t seed) {
  const auto grid = vf::parse_grid(read_input(cfg.input));
  const auto reports = vf::sweep(grid, cfg.trials, seed, campaign_options(cfg), cfg.alpha);
  return render_reports(cfg, config_echo(cfg, seed), reports);
}

// --- regime ---------------------------------------------------------------

std::string cmd_regime(const Config& cfg, std::uint64_t seed) {
  const EdgeProbability prob(cfg.p);
  const auto regime = classify_regime(cfg.m, cfg.n, prob, cfg.alpha, cfg.delta);
  const auto rp = analytic::RegimeParams::make(cfg.m, cfg.n, prob);
  const auto consts = analytic::fixed_constants(prob);

  std::vector<std::pair<std::string, json>> fields = {
      {"regime", std::string(to_string(regime.tag))},
      {"log_n", regime.log_n},
      {"log_m", regime.log_m},
      {"a", rp.a},
      {"b", rp.b},
      {"a_prime", rp.a_prime ? json(*rp.a_prime) : json(nullptr)},
      {"log_k", rp.log_k},
      {"lambda", rp.lambda},
      {"fifth_root_m", regime.fifth_root_m},
      {"fifth_root_n", regime.fifth_root_n},
      {"m_over_16", regime.m_over_16},
      {"alpha_m", regime.alpha_m},
      {"half_m", regime.half_m},
      {"m_cubed", regime.m_cubed},
      {"c_right", regime.c_right},
      {"r_star", consts.r_star},
      {"small_mss_c", consts.small_mss_c},
      {"alpha_for_delta", regime.alpha_for_delta},
      {"gamma", analytic::hugeright_gamma(cfg.alpha, cfg.phi)},
  };
  if (cfg.delta > 0.0 && cfg.delta < 0.5) fields.emplace_back("mu", analytic::gigantic_mu(cfg.delta));

  const auto echo = config_echo(cfg, seed);
  auto text = [](const json& v) {
    if (v.is_null()) return std::string("undefined");
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return format_real(v.get<double>());
    return v.dump();
  };
  if (cfg.format == "json") {
    json j;
    j["config"] = echo;
    for (const auto& [key, value] : fields) j[key] = value;
    return j.dump() + '\n';
  }
  std::string s;
  if (cfg.format == "csv") {
    s = echo_line(echo) + "key,value\n";
    for (const auto& [key, value] : fields) s += key + ',' + text(value) + '\n';
    return s;
  }
  std::ostringstream t;
  for (const auto& [key, value] : fields) t << std::left << std::setw(16) << key << text(value) << '\n';
  return t.str();
}

// --- frankl ---------------------------------------------------------------

std::string cmd_frankl(const Config& cfg, std::uint64_t seed) {
  auto family = parse_family(read_input(cfg.input));
  if (cfg.closure) family = union_closure(family);
  const auto result = frankl_check(family);
  const auto echo = config_echo(cfg, seed);
  if (cfg.format == "json") {
    json j;
    j["config"] = echo;
    j["family_size"] = result.family_size;
    j["element"] = result.element;
    j["count"] = result.count;
    j["frequency"] = to_string(result.frequency);
    j["satisfied"] = result.satisfied;
    return j.dump() + '\n';
  }
  if (cfg.format == "csv") {
    return echo_line(echo) + "family_size,element,count,frequency,satisfied\n" + std::to_string(result.family_size) +
           ',' + std::to_string(result.element) + ',' + std::to_string(result.count) + ',' +
           to_string(result.frequency) + ',' + (result.satisfied ? "true" : "false") + '\n';
  }
  std::ostringstream s;
  s << "family size  " << result.family_size << '\n'
    << "element      " << result.element << '\n'
    << "frequency    " << to_string(result.frequency) << " (" << result.count << " sets)\n"
    << "verdict      " << (result.satisfied ? "satisfied" : "violated") << '\n';
  return s.str();
}

void add_common(CLI::App* sub, Config& cfg) {
  sub->add_option("--seed", cfg.seed, "Root seed (default: $UCS_SEED, else 0)");
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
  sub->add_option("-o,--output", cfg.output, "Write output to this file");
  sub->add_option("--cap", cfg.cap, "Enumeration cap: at most 2^cap candidate subsets")->check(CLI::Range(1u, 62u));
  sub->add_option("--workers", cfg.workers, "Worker threads (0: all cores)");
}

void add_graph_params(CLI::App* sub, Config& cfg) {
  sub->add_option("-m", cfg.m, "Left side size")->required();
  sub->add_option("-n", cfg.n, "Right side size")->required();
  sub->add_option("-p", cfg.p, "Edge probability");
}

int classify_error(const std::exception& e, std::ostream& err) {
  err << "ucs: " << e.what() << '\n';
  if (dynamic_cast<const IoFailure*>(&e) || dynamic_cast<const ParseError*>(&e)) return kIoError;
  if (dynamic_cast<const HypothesisError*>(&e) || dynamic_cast<const CapExceeded*>(&e)) return kRefused;
  return kUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Maximal stable sets of random bipartite graphs and union-closed families", "ucs"};
  app.require_subcommand(1);

  auto* sample = app.add_subcommand("sample", "Sample a graph from B(m, n; p)");
  add_graph_params(sample, cfg);
  add_common(sample, cfg);

  auto* stats = app.add_subcommand("stats", "Enumerate the maximal stable sets of a graph file");
  stats->add_option("graph", cfg.input, "Graph file ('-' for stdin)")->required();
  stats->add_option("--delta", cfg.delta, "Slack of the conjecture check");
  add_common(stats, cfg);

  auto* verify = app.add_subcommand("verify", "Monte Carlo check of one lemma");
  verify->add_option("lemma", cfg.lemma, "Lemma id")->required();
  add_graph_params(verify, cfg);
  verify->add_option("--delta", cfg.delta);
  verify->add_option("--alpha", cfg.alpha);
  verify->add_option("--nu", cfg.nu);
  verify->add_option("--gamma", cfg.gamma);
  verify->add_option("--phi", cfg.phi);
  verify->add_option("--l", cfg.ell, "Left size or ell*");
  verify->add_option("--r", cfg.r, "Right size or r*");
  verify->add_option("--k", cfg.k, "Induced matching size");
  verify->add_option("--trials", cfg.trials);
  verify->add_option("--size-floor", cfg.size_floor, "m + n below which asymptotic bounds are informational");
  verify->add_flag("--informational", cfg.informational, "Run outside a lemma's hypothesis and flag it");
  verify->add_flag("--brute-force", cfg.brute_force, "Use the exhaustive engine (m + n <= 24)");
  add_common(verify, cfg);

  auto* sweep = app.add_subcommand("sweep", "Average campaigns over a grid file of m,n,p,delta rows");
  sweep->add_option("grid", cfg.input, "Grid file ('-' for stdin)")->required();
  sweep->add_option("--trials", cfg.trials);
  sweep->add_option("--alpha", cfg.alpha);
  sweep->add_flag("--brute-force", cfg.brute_force, "Use the exhaustive engine (m + n <= 24)");
  add_common(sweep, cfg);

  auto* regime = app.add_subcommand("regime", "Classify (m, n, p) and print derived quantities");
  add_graph_params(regime, cfg);
  regime->add_option("--alpha", cfg.alpha);
  regime->add_option("--delta", cfg.delta);
  regime->add_option("--phi", cfg.phi);
  add_common(regime, cfg);

  auto* frankl = app.add_subcommand("frankl", "Check a set family for a frequent element");
  frankl->add_option("family", cfg.input, "Family file ('-' for stdin)")->required();
  frankl->add_flag("--closure", cfg.closure, "Take the union closure first");
  add_common(frankl, cfg);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (cfg.workers == 0) cfg.workers = default_workers();
    const std::uint64_t seed = resolve_seed(cfg);
    std::string text;
    if (sample->parsed()) {
      cfg.command = "sample";
      text = cmd_sample(cfg, seed);
    } else if (stats->parsed()) {
      cfg.command = "stats";
      text = cmd_stats(cfg, seed);
    } else if (verify->parsed()) {
      cfg.command = "verify";
      text = cmd_verify(cfg, seed);
    } else if (sweep->parsed()) {
      cfg.command = "sweep";
      text = cmd_sweep(cfg, seed);
    } else if (regime->parsed()) {
      cfg.command = "regime";
      text = cmd_regime(cfg, seed);
    } else {
      cfg.command = "frankl";
      text = cmd_frankl(cfg, seed);
    }
    write_output(cfg, text, out);
    return kOk;
  } catch (const std::exception& e) {
    return classify_error(e, err);
  }
}

}  // namespace ucs::cli
