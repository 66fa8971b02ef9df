#pragma once

#include <cstdint>
#include <initializer_list>

namespace corp {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives a stream key from a master seed and a path of indices, so that
/// e.g. (seed, scenario, n, replicate) names one reproducible stream.
constexpr std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t key = mix64(seed);
  for (std::uint64_t p : path) key = mix64(key ^ mix64(p + 0x632be59bd9b4e019ULL));
  return key;
}

/// Counter-based generator: output i is a keyed hash of i. Streams with
/// distinct keys are independent and can be consumed in any order.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr StreamRng(std::uint64_t key) : key_(key) {}
  constexpr StreamRng(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
      : key_(derive_key(seed, path)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  constexpr result_type operator()() {
    return mix64(key_ ^ mix64(++counter_ * 0xd1b54a32d192ed03ULL));
  }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  constexpr bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace corp
