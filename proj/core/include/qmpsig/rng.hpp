#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace qmpsig {

/// Deterministic random stream. Conversions to doubles and bounded integers
/// are done here rather than through <random> distributions, whose output is
/// implementation-defined, so seeded artifacts are identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform angle in [0, 2*pi).
  double angle();

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derives an independent stream seed from a parent seed and a list of tags.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

}  // namespace qmpsig
