#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace gmdkp {

/// Portable seeded generator: std::mt19937_64 (output fully specified by the
/// standard) feeding a hand-rolled Box-Muller transform, so draws do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal. Draws come in Box-Muller pairs; the sine branch is cached.
  double normal();

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Order-dependent hash of a tuple of integers: h = splitmix64(h ^ v) folded
/// left over the values, starting from h = 0x9e3779b97f4a7c15.
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> values);

}  // namespace gmdkp
