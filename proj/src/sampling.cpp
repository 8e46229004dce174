#include "wrinkle/sampling.hpp"

namespace wrinkle {

std::vector<Point4> sample_ball(std::uint64_t seed, std::uint64_t stream, std::size_t count, const Rational& radius) {
  const CounterRng rng(seed, stream);
  std::vector<Point4> out;
  out.reserve(count);
  std::uint64_t draw = 0;
  while (out.size() < count) {
    Point4 p;
    Rational norm2 = 0;
    for (auto& c : p) {
      c = rng.dyadic(draw++);
      norm2 += c * c;
    }
    if (norm2 > 1) continue;
    for (auto& c : p) c *= radius;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace wrinkle
