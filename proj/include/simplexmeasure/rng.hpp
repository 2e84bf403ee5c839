#pragma once

#include <cstdint>
#include <random>

namespace simplexmeasure {

// Deterministic pseudorandom source. The engine is std::mt19937_64, whose
// output sequence is fully pinned by the C++ standard, and every variate
// transform below is implemented here rather than delegated to the standard
// distributions (whose algorithms are implementation-defined). Identical seed
// implies an identical stream on every platform.
//
// Substream derivation rule: substream(i) reseeds with
// splitmix64(seed + (i+1) * 0x9E3779B97F4A7C15).
class SeededGenerator {
 public:
  explicit SeededGenerator(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  SeededGenerator substream(std::uint64_t index) const;

  std::uint64_t next_u64();
  // Uniform on the open interval (0, 1).
  double uniform01();
  // Standard normal via Box-Muller (pairs generated, second value cached).
  double normal();
  // Standard exponential, -log(U).
  double exponential();
  // Gamma with given shape and unit scale (Marsaglia-Tsang, with the
  // U^{1/shape} boost for shape < 1).
  double gamma(double shape);

  static std::uint64_t splitmix64(std::uint64_t x);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace simplexmeasure
