#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sbp/perm.hpp"
#include "sbp/stats.hpp"

namespace sbp {

class Rng;

struct SimulationConfig {
  unsigned p = 0;
  unsigned k = 0;
  std::uint64_t chains = 1;
  unsigned t_max = 1;
  /// Identity when empty.
  std::optional<Permutation> start;
  std::uint64_t seed = 0;
  /// 0: take SBP_THREADS from the environment, else the hardware count.
  unsigned threads = 0;
};

/// Lumped empirical laws μ̂_t over [k:2k] for t ∈ [1:t_max].
struct EmpiricalCurve {
  unsigned p = 0;
  unsigned k = 0;
  std::uint64_t chains = 0;
  unsigned t_max = 0;
  std::vector<std::vector<std::uint64_t>> counts;  // counts[t-1][a-k]
  std::vector<std::vector<double>> mu_hat;         // same shape
  std::vector<double> tv_hat;                      // tv(μ̂_t, π̄), index t-1
  /// (1/2) Σ_a sqrt(μ̂_t(a)(1-μ̂_t(a))/B), a rough scale for the noise in tv_hat.
  std::vector<double> std_error;
};

/// Threads from SBP_THREADS if set to a positive integer, else the hardware
/// concurrency (at least 1).
unsigned default_thread_count();

/// Runs `chains` independent chains. Chain b draws from Rng(derive_seed(seed, b)),
/// so the curve does not depend on the thread count. Only T(σ_t) is recorded.
/// Throws std::invalid_argument on an invalid configuration.
EmpiricalCurve run_simulation(const SimulationConfig& cfg);

/// Outcome of a sampler goodness-of-fit test.
struct SamplerTest {
  std::string name;
  std::uint64_t draws = 0;
  std::size_t support = 0;
  /// Draws that landed outside the enumerated support.
  std::uint64_t outside = 0;
  ChiSquareResult chi;

  bool passed(double alpha = kSignificance) const { return outside == 0 && chi.passed(alpha); }
};

/// Weight R(g) of stabiliser draws at σ against Binomial(2k - T(σ), (p-1)/p).
SamplerTest test_R_binomial(unsigned p, unsigned k, const Permutation& sigma, std::uint64_t draws, Rng& rng);

class SupportTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// {τ : h⁻¹τg = τ} by backtracking along the cycles of g. Throws
/// SupportTooLarge once more than `limit` solutions are found.
std::vector<Permutation> enumerate_fixed_points(const Permutation& h, const Permutation& g, std::size_t limit = 200);

/// Draws from sample_fixed_points against the uniform law on the enumerated
/// support (at most 200 elements).
SamplerTest test_fixed_point_uniformity(unsigned p, unsigned k, const Permutation& h, const Permutation& g,
                                        std::uint64_t draws, Rng& rng);

}  // namespace sbp
