#pragma once

#include "ucs/random.hpp"
#include "ucs/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ucs {

inline constexpr unsigned kMaxGroundSize = 20;

// Finite family of subsets of {0, .., ground_size - 1}, each stored as a bit
// mask. Members are kept sorted and free of duplicates.
class SetFamily {
 public:
  // Throws CapExceeded if ground_size > 20, RangeError if a member has a bit
  // outside the ground set. Duplicates are dropped.
  SetFamily(unsigned ground_size, std::vector<std::uint32_t> members);

  unsigned ground_size() const noexcept { return ground_size_; }
  const std::vector<std::uint32_t>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(std::uint32_t set) const noexcept;
  // Union of all members.
  std::uint32_t universe() const noexcept;

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

 private:
  unsigned ground_size_;
  std::vector<std::uint32_t> members_;
};

// Smallest union-closed family containing the generators.
SetFamily union_closure(const SetFamily& generators);

bool is_union_closed(const SetFamily& family);

struct FranklResult {
  unsigned element = 0;      // most frequent element of the universe (smallest on ties)
  std::uint64_t count = 0;   // members containing it
  std::uint64_t family_size = 0;
  Rational frequency;        // count / family_size
  bool satisfied = false;    // 2 count >= family_size
};

// Throws HypothesisError if the family is not union-closed, is empty, or is {∅}.
FranklResult frankl_check(const SetFamily& family);

// One set per line as comma-separated element indices, "-" for the empty set.
// Blank lines and lines starting with '#' are skipped. The ground size is the
// largest element + 1 unless given.
SetFamily parse_family(std::string_view text, std::optional<unsigned> ground_size = std::nullopt);
std::string serialize_family(const SetFamily& family);

// `count` generator sets, each element included with probability 1/2.
SetFamily sample_family(unsigned ground_size, std::size_t count, Seed seed);

}  // namespace ucs
