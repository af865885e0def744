#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace biseld::scene {

/// splitmix64 finalizer folded over the parts; used to derive independent
/// seeds such as (master_seed, split, mixture_index).
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

/// Portable deterministic generator. Draws are built directly on the
/// mt19937_64 output sequence (which the standard fixes), not on the
/// implementation-defined std distributions, so results match across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n);
  /// Standard normal (Box-Muller).
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace biseld::scene
