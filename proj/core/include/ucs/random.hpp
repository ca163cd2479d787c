#pragma once

#include <cstdint>

namespace ucs {

// Identifies one independent random stream. Draw i of stream (root, stream)
// is a pure function of (root, stream, i), so results never depend on the
// order in which trials or edges are processed.
struct Seed {
  std::uint64_t root = 0;
  std::uint64_t stream = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

std::uint64_t mix64(std::uint64_t x) noexcept;

// Root seed for child `index` of `root` (e.g. one sweep grid point).
std::uint64_t derive_root(std::uint64_t root, std::uint64_t index) noexcept;

// Counter-based generator: no internal state besides the stream key.
class CounterRng {
 public:
  explicit CounterRng(Seed seed) noexcept;

  std::uint64_t bits(std::uint64_t counter) const noexcept;

  // Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const noexcept;

  // True with probability p; p <= 0 never fires, p >= 1 always does.
  bool bernoulli(std::uint64_t counter, double p) const noexcept {
    return uniform(counter) < p;
  }

 private:
  std::uint64_t key_;
};

}  // namespace ucs
