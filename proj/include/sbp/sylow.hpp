#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sbp/exact.hpp"
#include "sbp/perm.hpp"

namespace sbp {

class Rng;

/// Exponents (i_1, ..., i_k), each in [0, p-1], naming η_1^{i_1} ⋯ η_k^{i_k} ∈ H.
struct ExponentVector {
  std::vector<std::uint32_t> exponents;
  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
};

/// The abelian Sylow p-subgroup H = ⟨η_1, ..., η_k⟩ of S_{pk}, k < p, where
/// η_j is the p-cycle ((j-1)p+1, ..., jp). Block j is the support of η_j.
class SylowContext {
 public:
  /// Throws std::invalid_argument unless p is prime and 1 <= k < p.
  SylowContext(unsigned p, unsigned k);

  unsigned p() const { return p_; }
  unsigned k() const { return k_; }
  std::size_t n() const { return static_cast<std::size_t>(p_) * k_; }
  /// η_j for j in [1:k].
  const Permutation& generator(unsigned j) const { return generators_.at(j - 1); }
  const std::vector<Permutation>& generators() const { return generators_; }

  /// Π_j η_j^{i_j}.
  Permutation realize(const ExponentVector& v) const;
  /// Every element of H, in lexicographic order of exponent vectors
  /// (i_1 most significant).
  std::vector<Permutation> elements() const;

 private:
  unsigned p_;
  unsigned k_;
  std::vector<Permutation> generators_;
};

/// Deterministic trial division.
bool is_prime(std::uint64_t n);

/// Pair (h, g) in the stabiliser of σ under (h, g)·σ = h⁻¹σg, i.e. h = σgσ⁻¹.
struct StabilizerSample {
  Permutation h;
  Permutation g;
  ExponentVector g_exponents;
};

/// The exponent vector of σ if σ ∈ H, otherwise nullopt.
std::optional<ExponentVector> h_membership(const SylowContext& ctx, const Permutation& sigma);

/// Number of p-cycles of the element named by v.
unsigned weight_R(const ExponentVector& v);

/// A = {j : σ η_j σ⁻¹ ∈ H}, 1-based and ascending. |H ∩ σ⁻¹Hσ| = p^|A|.
std::vector<unsigned> stabilizer_axes(const SylowContext& ctx, const Permutation& sigma);

/// T(σ) = log_p |HσH| = 2k - |A|.
unsigned coset_exponent_T(const SylowContext& ctx, const Permutation& sigma);

/// Uniform draw from (H×H)_σ: independent uniform exponents on the axes in A.
StabilizerSample sample_stabilizer(const SylowContext& ctx, const Permutation& sigma, Rng& rng);

/// |{τ : τgτ⁻¹ = h}| = ((k-y)p)! · y! · p^y for h, g with y p-cycles each.
BigInt fixed_point_count(const SylowContext& ctx, unsigned y);

/// Uniform draw from {τ : h⁻¹τg = τ}.
///
/// Fixed points of g go to fixed points of h through a uniform bijection; the
/// p-cycles of g go to those of h as blocks (uniform γ ∈ S_y) with a uniform
/// cyclic offset per cycle. Throws std::invalid_argument if h and g are not
/// both made of fixed points and p-cycles with matching counts.
Permutation sample_fixed_points(const SylowContext& ctx, const Permutation& h, const Permutation& g, Rng& rng);

/// One step of the Sylow–Burnside chain from σ.
Permutation burnside_step(const SylowContext& ctx, const Permutation& sigma, Rng& rng);

}  // namespace sbp
