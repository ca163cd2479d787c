#include "ucs/random.hpp"

namespace ucs {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_root(std::uint64_t root, std::uint64_t index) noexcept {
  return mix64(root ^ mix64(index ^ 0x6a09e667f3bcc909ULL));
}

CounterRng::CounterRng(Seed seed) noexcept
    : key_(mix64(seed.root ^ mix64(seed.stream + 0xbb67ae8584caa73bULL))) {}

std::uint64_t CounterRng::bits(std::uint64_t counter) const noexcept {
  return mix64(key_ ^ mix64(counter * kGolden));
}

double CounterRng::uniform(std::uint64_t counter) const noexcept {
  return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

}  // namespace ucs
