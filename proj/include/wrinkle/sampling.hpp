#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "wrinkle/rational.hpp"

namespace wrinkle {

/// Counter-based generator: the value for (seed, stream, index) is a pure
/// function of its arguments, so samples can be materialised in any order or
/// in parallel and still come out identical.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31U);
  }

  std::uint64_t bits(std::uint64_t index) const {
    return mix(mix(seed_ ^ mix(stream_ + 0x632BE59BD9B4E019ULL)) + index);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t index) const {
    return static_cast<double>(bits(index) >> 11U) * 0x1.0p-53;
  }

  /// Uniform dyadic rational in [-1, 1) with denominator 2^20.
  Rational dyadic(std::uint64_t index) const {
    const auto numerator = static_cast<long>(bits(index) >> 43U) - (1L << 20U);
    return ratio(numerator, 1L << 20U);
  }

  std::int64_t integer(std::uint64_t index, std::int64_t lo, std::int64_t hi) const {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(bits(index) % span);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

using Point4 = std::array<Rational, 4>;

/// Rational points uniform in the closed ball of the given radius around the
/// origin of R^4 (rejection sampling over dyadic cubes; deterministic).
std::vector<Point4> sample_ball(std::uint64_t seed, std::uint64_t stream, std::size_t count, const Rational& radius);

}  // namespace wrinkle
