#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "tgmc/quaternion.hpp"

namespace tgmc {

// Counter-based generator: output k of stream s under key `seed` is
// splitmix64(mix(seed, s) + k * golden). Streams are independent of the
// order in which they are consumed, so per-node noise does not depend on
// node visitation order. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;
  static constexpr const char* kName = "splitmix64-counter";

  CounterRng() : CounterRng(0) {}
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t counter = 0)
      : key_(Mix(seed ^ Mix(stream + 0x632BE59BD9B4E019ULL))), counter_(counter) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return Mix(key_ + (counter_++) * 0x9E3779B97F4A7C15ULL); }

  std::uint64_t counter() const { return counter_; }

  // Uniform in (0, 1).
  double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

  // Box-Muller without caching, so every draw consumes exactly two words.
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  Vec3 normal3() { return {normal(), normal(), normal()}; }
  Vec4 normal4() { return {normal(), normal(), normal(), normal()}; }

  static std::uint64_t Mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

inline UnitQuaternion uniform_quaternion(CounterRng& rng) {
  Vec4 g = rng.normal4();
  while (g.norm() < 1e-12) g = rng.normal4();
  return UnitQuaternion(g);
}

}  // namespace tgmc
