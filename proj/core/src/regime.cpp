#include "ucs/regime.hpp"

#include "ucs/analytic.hpp"
#include "ucs/error.hpp"

#include <array>
#include <cmath>
#include <string>

namespace ucs {

namespace {

constexpr std::array<std::string_view, 7> kNames = {
    "ConstantRight", "MatchingSaturated", "GiganticRight", "EntropyBand",
    "HoeffdingBand", "Balanced",          "LargeLeft",
};

// x >= y, treating values within rounding noise of the boundary as on it.
bool at_least(double x, double y) { return x >= y - 1e-12 * std::max(1.0, std::abs(y)); }

}  // namespace

std::string_view to_string(RegimeTag tag) noexcept { return kNames[static_cast<std::size_t>(tag)]; }

std::optional<RegimeTag> parse_regime_tag(std::string_view text) noexcept {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == text) return static_cast<RegimeTag>(i);
  }
  return std::nullopt;
}

Regime classify_regime(std::uint64_t m, std::uint64_t n, const EdgeProbability& prob, double alpha,
                       double delta) {
  if (m == 0 || n == 0) throw RangeError("regimes are defined for m, n >= 1");
  if (prob.degenerate()) throw RangeError("regimes are defined for 0 < p < 1");
  if (!(alpha >= 1.0 / 16.0 && alpha < 0.5)) throw RangeError("alpha must lie in [1/16, 1/2)");
  if (!(delta >= 0.0)) throw RangeError("delta must be nonnegative");

  Regime r;
  r.alpha = alpha;
  r.delta = delta;
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  r.log_n = analytic::log_inv_q(nd, prob);
  r.log_m = analytic::log_inv_q(md, prob);
  r.fifth_root_m = std::pow(md, 0.2);
  r.fifth_root_n = std::pow(nd, 0.2);
  r.m_over_16 = md / 16.0;
  r.alpha_m = alpha * md;
  r.half_m = md / 2.0;
  r.m_cubed = md * md * md;
  r.c_right = analytic::fixed_constants(prob).c_right;
  r.alpha_for_delta = 0.5 - delta / 4.0;

  if (n <= static_cast<std::uint64_t>(r.c_right)) {
    r.tag = RegimeTag::ConstantRight;
  } else if (at_least(r.log_n, r.m_cubed)) {
    r.tag = RegimeTag::MatchingSaturated;
  } else if (at_least(r.log_n, r.alpha_m)) {
    r.tag = RegimeTag::GiganticRight;
  } else if (at_least(r.log_n, r.m_over_16)) {
    r.tag = RegimeTag::EntropyBand;
  } else if (at_least(r.log_n, r.fifth_root_m)) {
    r.tag = RegimeTag::HoeffdingBand;
  } else if (at_least(r.fifth_root_n, r.log_m)) {
    r.tag = RegimeTag::Balanced;
  } else {
    r.tag = RegimeTag::LargeLeft;
  }
  return r;
}

}  // namespace ucs
