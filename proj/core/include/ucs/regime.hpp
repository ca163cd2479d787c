#pragma once

#include "ucs/graph.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace ucs {

// Parameter regimes of (m, n, p), written with ℓ = log_{1/q}(n):
//   ConstantRight      n <= c_right
//   MatchingSaturated  ℓ >= m^3
//   GiganticRight      ℓ >= alpha m
//   EntropyBand        ℓ >= m / 16
//   HoeffdingBand      ℓ >= m^(1/5)
//   Balanced           log_{1/q}(m) <= n^(1/5)
//   LargeLeft          otherwise (log_{1/q}(m) >= n^(1/5))
// The first matching row wins, which makes the classification total.
enum class RegimeTag {
  ConstantRight,
  MatchingSaturated,
  GiganticRight,
  EntropyBand,
  HoeffdingBand,
  Balanced,
  LargeLeft,
};

inline constexpr RegimeTag kAllRegimeTags[] = {
    RegimeTag::ConstantRight, RegimeTag::MatchingSaturated, RegimeTag::GiganticRight,
    RegimeTag::EntropyBand,   RegimeTag::HoeffdingBand,     RegimeTag::Balanced,
    RegimeTag::LargeLeft,
};

std::string_view to_string(RegimeTag tag) noexcept;
std::optional<RegimeTag> parse_regime_tag(std::string_view text) noexcept;

struct Regime {
  RegimeTag tag = RegimeTag::LargeLeft;
  double alpha = 0.45;
  double delta = 0.0;
  // All comparisons happen on these log_{1/q} quantities.
  double log_n = 0.0;
  double log_m = 0.0;
  double fifth_root_m = 0.0;
  double fifth_root_n = 0.0;
  double m_over_16 = 0.0;
  double alpha_m = 0.0;
  double half_m = 0.0;
  double m_cubed = 0.0;
  long long c_right = 0;
  // alpha = 1/2 - delta/4, the split that suffices for the given delta.
  double alpha_for_delta = 0.5;
};

// Throws RangeError unless m, n >= 1, 0 < p < 1, 1/16 <= alpha < 1/2 and
// delta >= 0.
Regime classify_regime(std::uint64_t m, std::uint64_t n, const EdgeProbability& prob,
                       double alpha = 0.45, double delta = 0.0);

}  // namespace ucs
