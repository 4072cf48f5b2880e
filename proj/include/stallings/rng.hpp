#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace stallings {

std::uint64_t splitmix64(std::uint64_t x);

// Seedable generator whose output is identical on every platform. The
// engine is std::mt19937_64 (fully specified by the standard); bounded draws
// use Lemire's multiply-and-reject method instead of the implementation
// defined std::uniform_int_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for one trial of an experiment.
  static Rng for_trial(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  // Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace stallings
