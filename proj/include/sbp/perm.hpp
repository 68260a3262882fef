#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sbp {

class Rng;

/// Largest degree accepted by the constructors. Arrays stay dense, so this is
/// a memory guard rather than an algorithmic limit.
inline constexpr std::size_t kMaxDegree = std::size_t{1} << 16;

/// A bijection of the points 1..n.
///
/// Storage is 0-based (`images()[a] == σ(a+1) - 1`), but every text form and
/// every accessor taking a point number is 1-based. Composition follows the
/// function convention throughout the library:
///
///     compose(σ, τ)(a) == σ(τ(a))
///
/// so `compose(σ, τ)` applies τ first.
class Permutation {
 public:
  using point_type = std::uint32_t;

  Permutation() = default;

  /// Identity of degree n.
  explicit Permutation(std::size_t n);

  /// From 0-based images; throws std::invalid_argument unless a bijection.
  static Permutation from_images(std::vector<point_type> images);
  /// From 1-based one-line form, e.g. {2, 3, 1}.
  static Permutation from_one_line(std::span<const std::uint32_t> one_based);
  /// From disjoint cycles in 1-based points. Points not mentioned are fixed.
  static Permutation from_cycles(std::size_t n, const std::vector<std::vector<std::uint32_t>>& cycles);

  std::size_t degree() const { return images_.size(); }
  /// 0-based image of a 0-based point.
  point_type operator[](std::size_t a) const { return images_[a]; }
  /// 1-based image of a 1-based point.
  std::uint32_t apply(std::uint32_t point) const { return images_.at(point - 1) + 1; }
  const std::vector<point_type>& images() const { return images_; }

  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<point_type> images, int /*unchecked*/) : images_(std::move(images)) {}

  std::vector<point_type> images_;

  friend Permutation compose(const Permutation&, const Permutation&);
  friend Permutation inverse(const Permutation&);
  friend Permutation conjugate(const Permutation&, const Permutation&);
};

/// Multiset of cycle lengths: length -> multiplicity.
struct CycleType {
  std::map<std::size_t, std::size_t> counts;

  std::size_t degree() const;
  friend bool operator==(const CycleType&, const CycleType&) = default;
};

Permutation identity(std::size_t n);
/// a ↦ σ(τ(a)). Throws std::invalid_argument on degree mismatch.
Permutation compose(const Permutation& sigma, const Permutation& tau);
Permutation inverse(const Permutation& sigma);
/// σ g σ⁻¹, i.e. g with every point relabelled by σ.
Permutation conjugate(const Permutation& sigma, const Permutation& g);
CycleType cycle_type(const Permutation& sigma);
/// Cycles of length ≥ 2, each starting at its smallest point, ordered by that
/// point. Points are 0-based.
std::vector<std::vector<Permutation::point_type>> cycles(const Permutation& sigma);

/// Uniform over S_n (Fisher–Yates driven by `rng`).
Permutation uniform_random(std::size_t n, Rng& rng);

/// All n! permutations in lexicographic order of their one-line form.
std::vector<Permutation> all_permutations(std::size_t n);
/// Position of σ in the lexicographic order used by all_permutations.
std::size_t lexicographic_rank(const Permutation& sigma);

/// "(1 2 3)(4 5)"; the identity prints as "()".
std::string to_cycle_string(const Permutation& sigma);
/// "[2,3,1,5,4]".
std::string to_one_line_string(const Permutation& sigma);
/// Parses cycle notation for a permutation of degree n.
Permutation parse_cycles(std::string_view text, std::size_t n);
/// Parses the bracketed one-line form; the degree is the number of entries.
Permutation parse_one_line(std::string_view text);

}  // namespace sbp
