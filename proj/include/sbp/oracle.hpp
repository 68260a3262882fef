#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sbp/counts.hpp"
#include "sbp/exact.hpp"
#include "sbp/perm.hpp"
#include "sbp/report.hpp"

namespace sbp {

/// Thrown when (pk)! exceeds the brute-force limit.
class InstanceTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Largest (pk)! the brute-force routines accept.
inline constexpr std::size_t kOracleStateLimit = 10000;

/// Partition of S_{pk} into H-double cosets, found by expanding orbits of
/// (h, g)·σ = h⁻¹σg. States are all permutations in lexicographic order.
struct DoubleCosetCensus {
  unsigned p = 0;
  unsigned k = 0;
  std::vector<Permutation> states;
  std::vector<std::uint32_t> coset_of;   // per state
  std::vector<std::uint32_t> exponent;   // per state: log_p of its coset size
  std::vector<std::uint32_t> representative;  // per coset: smallest state
  std::vector<std::uint32_t> coset_size;      // per coset

  std::size_t size() const { return states.size(); }
  std::size_t coset_count() const { return representative.size(); }
};

DoubleCosetCensus enumerate_double_cosets(unsigned p, unsigned k);

/// f(a;k) by exhaustive enumeration. Throws InstanceTooLarge if (pk)! > 10⁴.
CosetCountTable census_double_cosets(unsigned p, unsigned k);

/// The transition kernel on all of S_{pk},
///
///   P(σ,τ) = (1/|G_σ|) Σ_{(h,g) ∈ G_σ ∩ G_τ} 1/|X^{h,g}|,
///
/// with G_σ the stabiliser of σ in H×H and X^{h,g} = {τ : h⁻¹τg = τ}.
/// Stored factorised: each state lists the pairs that fix it and each pair
/// lists the states it fixes, both found by brute force over H×H. Entries
/// are integers over the common denominator scale() = p^{2k} (pk)!.
class FullKernel {
 public:
  explicit FullKernel(DoubleCosetCensus census);

  unsigned p() const { return census_.p; }
  unsigned k() const { return census_.k; }
  std::size_t size() const { return census_.size(); }
  const DoubleCosetCensus& census() const { return census_; }
  const Permutation& state(std::size_t i) const { return census_.states[i]; }
  std::size_t index_of(const Permutation& sigma) const { return lexicographic_rank(sigma); }
  std::uint32_t exponent(std::size_t i) const { return census_.exponent[i]; }

  std::int64_t scale() const { return scale_; }
  /// Pair ids h_index·|H| + g_index fixing state i, ascending.
  const std::vector<std::uint32_t>& stabilizer(std::size_t i) const { return stabilizer_[i]; }
  /// States fixed by a pair, ascending.
  const std::vector<std::uint32_t>& fixed_states(std::uint32_t pair) const { return fixed_[pair]; }
  std::size_t group_order() const { return group_order_; }

  /// P(σ,τ)·scale().
  std::int64_t entry(std::size_t sigma, std::size_t tau) const;
  /// Row σ of P, times scale().
  std::vector<std::int64_t> row(std::size_t sigma) const;
  BigRational probability(std::size_t sigma, std::size_t tau) const;

  /// v P and P f, exact; the denominator grows by scale().
  ScaledVector apply_left(const ScaledVector& v) const;
  ScaledVector apply_right(const ScaledVector& f) const;

  /// π(σ) = 1 / (Z p^{T(σ)}), as |G_σ| / (Z p^{2k}).
  ScaledVector stationary() const;
  /// Point mass at state i.
  ScaledVector point_mass(std::size_t i) const;
  /// Σ over states with T = a, for a ∈ [k:2k].
  ScaledVector lump(const ScaledVector& v) const;

 private:
  DoubleCosetCensus census_;
  std::size_t group_order_ = 0;  // |H×H|
  std::int64_t scale_ = 0;
  std::vector<std::vector<std::uint32_t>> stabilizer_;
  std::vector<std::vector<std::uint32_t>> fixed_;
  std::vector<std::int64_t> orbit_weight_;  // per state: |H×H| / |G_σ|
  std::vector<std::int64_t> pair_weight_;   // per pair: (pk)! / |X^{h,g}|
};

/// Throws InstanceTooLarge if (pk)! > 10⁴.
FullKernel build_full_kernel(unsigned p, unsigned k);

/// Stochasticity, reversibility and stationarity of the full kernel, plus
/// cross-checks of its ingredients against the sylow and counts modules:
/// fixed-set sizes against fixed_point_count, stabiliser orders against
/// stabilizer_axes, coset sizes against coset_exponent_T, and the census
/// against count_f.
VerificationReport verify_full_kernel(const FullKernel& kernel);

/// Rows with equal T have equal lumped masses, and those masses equal
/// build_lumped(p, k) entry for entry.
VerificationReport verify_lumping(const FullKernel& kernel);

/// P^t_σ(· | T = 2k) is uniform for every σ and t ∈ [1:t_max].
VerificationReport verify_conditional_uniformity(const FullKernel& kernel, unsigned t_max);

/// tv(P̄^t_a, π̄) <= tv(P^t_σ, π) for every σ with T(σ) = a and t ∈ [0:t_max];
/// also checks the lumped projection of P^t_σ equals P̄^t_a. The distance
/// to the large-p envelope center is reported as a note only.
VerificationReport verify_tv_sandwich(const FullKernel& kernel, unsigned t_max);

enum class StartClass { size_p, size_p2 };

/// k = 1: closed-form tv(P^t_σ, π) for σ in a coset of the given size, t >= 1.
BigRational k1_exact_tv(unsigned p, StartClass start, unsigned t);

struct K1Spectrum {
  unsigned p = 0;
  std::vector<BigRational> eigenvalues;  // 1, 1-1/p, 1-1/p-(p-1)/(p(p-2)!), 0
  std::vector<BigInt> multiplicities;    // 1, p-2, 1, p!-p
  BigInt n1;                             // cosets of size p
  BigInt n2;                             // cosets of size p²
};

K1Spectrum k1_spectrum(unsigned p);

/// k = 1 kernel entries against the three-case closed form, for every pair.
VerificationReport verify_k1_kernel(const FullKernel& kernel);

/// k = 1 eigenstructure, checked by applying P to each eigenvector family
/// (left and right): constants and π, differences of coset indicators within
/// A, (1/n₁)1_A - (1/n₂)1_B and its left partner ψ̃, and the zero eigenspace
/// through equality of rows and columns within each class. Also checks the
/// multiplicities sum to p! and that P^t rows from one start per double
/// coset equal their closed forms for t ∈ [1:t_max].
VerificationReport verify_k1_spectrum(const FullKernel& kernel, unsigned t_max = 10);
VerificationReport verify_k1_spectrum(unsigned p);

/// k1_exact_tv against the kernel, one start per double coset, t ∈ [1:t_max].
VerificationReport verify_k1_tv(const FullKernel& kernel, unsigned t_max);

}  // namespace sbp
