#pragma once

#include <cstdint>

namespace fixsettle {

/// SplitMix64 stream. Seeded per (seed, index) so samples do not depend on
/// evaluation order or thread count.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  SplitMix64(std::uint64_t seed, std::uint64_t index)
      : state_(seed ^ ((index + 1) * 0xD1B54A32D192ED03ULL)) {
    next();
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace fixsettle
