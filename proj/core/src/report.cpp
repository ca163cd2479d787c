#include "ucs/verifier.hpp"

#include "json.hpp"
#include "ucs/rational.hpp"

#include <cmath>
#include <string>

namespace ucs::verifier {

namespace {

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string regime_name(const BoundReport& r) { return r.regime ? std::string(to_string(*r.regime)) : ""; }

// JSON has no NaN or infinity; those become null.
nlohmann::ordered_json real(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

nlohmann::ordered_json optional_real(const std::optional<double>& x) { return x ? real(*x) : nullptr; }

}  // namespace

std::string_view csv_header() noexcept {
  return "lemma_id,m,n,p,delta,trials,claimed,measured,ci,verdict,seed,regime,note";
}

std::string report_to_csv_row(const BoundReport& r) {
  std::string row;
  row += csv_field(r.lemma_id) + ',';
  row += std::to_string(r.params.m) + ',';
  row += std::to_string(r.params.n) + ',';
  row += format_real(r.params.p) + ',';
  row += format_real(r.params.delta) + ',';
  row += std::to_string(r.trials) + ',';
  row += format_real(r.claimed) + ',';
  row += format_real(r.measured) + ',';
  row += format_real(r.ci) + ',';
  row += std::string(to_string(r.verdict)) + ',';
  row += std::to_string(r.seed) + ',';
  row += regime_name(r) + ',';
  row += csv_field(r.note);
  return row;
}

std::string reports_to_csv(std::span<const BoundReport> reports) {
  std::string out(csv_header());
  out += '\n';
  for (const auto& r : reports) {
    out += report_to_csv_row(r);
    out += '\n';
  }
  return out;
}

std::string report_to_json(const BoundReport& r) {
  nlohmann::ordered_json params;
  params["m"] = r.params.m;
  params["n"] = r.params.n;
  params["p"] = r.params.p;
  params["delta"] = r.params.delta;
  params["nu"] = r.params.nu;
  params["gamma"] = r.params.gamma;
  params["phi"] = r.params.phi;
  params["alpha"] = r.params.alpha;
  params["l"] = r.params.ell;
  params["r"] = r.params.r;
  params["k"] = r.params.k;
  params["strict"] = r.params.strict;

  nlohmann::ordered_json j;
  j["lemma_id"] = r.lemma_id;
  j["params"] = std::move(params);
  j["trials"] = r.trials;
  j["claimed"] = real(r.claimed);
  j["measured"] = real(r.measured);
  j["ci"] = real(r.ci);
  j["verdict"] = to_string(r.verdict);
  j["seed"] = r.seed;
  j["regime"] = r.regime ? nlohmann::ordered_json(regime_name(r)) : nlohmann::ordered_json(nullptr);
  j["reference"] = optional_real(r.reference);
  j["threshold"] = optional_real(r.threshold);
  j["vacuous"] = r.vacuous;
  j["counterexamples"] = r.counterexamples;
  j["note"] = r.note;
  return j.dump();
}

}  // namespace ucs::verifier
