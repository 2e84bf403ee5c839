#include "simplexmeasure/rng.hpp"

#include <cmath>
#include <numbers>

#include "simplexmeasure/errors.hpp"

namespace simplexmeasure {

std::uint64_t SeededGenerator::splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

SeededGenerator::SeededGenerator(std::uint64_t seed) : seed_(seed), engine_(seed) {}

SeededGenerator SeededGenerator::substream(std::uint64_t index) const {
  return SeededGenerator(splitmix64(seed_ + (index + 1) * 0x9E3779B97F4A7C15ULL));
}

std::uint64_t SeededGenerator::next_u64() { return engine_(); }

double SeededGenerator::uniform01() {
  // 53-bit mantissa; reject exact zero to keep the interval open.
  for (;;) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

double SeededGenerator::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(a);
  has_cached_normal_ = true;
  return r * std::cos(a);
}

double SeededGenerator::exponential() { return -std::log(uniform01()); }

double SeededGenerator::gamma(double shape) {
  if (!(shape > 0.0)) throw DomainError("SeededGenerator::gamma: shape must be > 0");
  if (shape < 1.0) {
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform01(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace simplexmeasure
