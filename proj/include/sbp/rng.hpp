#pragma once

#include <cstdint>
#include <random>

namespace sbp {

/// Seeded random source passed explicitly to every sampler.
///
/// Bounded integers are produced by rejection on the raw 64-bit engine output
/// rather than std::uniform_int_distribution, whose algorithm is
/// implementation-defined; seeded streams are therefore identical across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform double in [0, 1) with 53 random bits.
  double unit();
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finaliser; used to derive independent sub-seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for stream `index` of a master seed. Depends only on (master, index),
/// so per-chain streams do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace sbp
