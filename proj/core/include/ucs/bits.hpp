#pragma once

#include <boost/dynamic_bitset.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>

namespace ucs {

// Vertex subsets and adjacency rows. Bit i corresponds to vertex i of a side.
using Bits = boost::dynamic_bitset<std::uint64_t>;

template <typename Fn>
void for_each_bit(const Bits& bits, Fn&& fn) {
  for (auto i = bits.find_first(); i != Bits::npos; i = bits.find_next(i)) {
    fn(static_cast<std::size_t>(i));
  }
}

// Ordering used for canonical listings: first by width, then by the bit at
// index 0, 1, ... (a set bit sorts after a clear one).
std::strong_ordering compare_bits(const Bits& a, const Bits& b);

// "0101..." with character i giving bit i.
std::string bits_to_row(const Bits& bits);

inline Bits full_bits(std::size_t width) {
  Bits b(width);
  b.set();
  return b;
}

}  // namespace ucs
