#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace ranknexus::embed {

// std::uniform_*_distribution output differs across standard libraries;
// these draw straight from the engine so a seed means the same thing
// everywhere.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, n). n must be > 0.
  std::size_t Below(std::size_t n) {
    const std::uint64_t range = n;
    const std::uint64_t limit =
        std::mt19937_64::max() - (std::mt19937_64::max() % range);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % range);
  }

  /// Uniform real in [0, 1).
  double Unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ranknexus::embed
