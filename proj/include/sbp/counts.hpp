#pragma once

#include <vector>

#include "sbp/distribution.hpp"
#include "sbp/exact.hpp"
#include "sbp/report.hpp"

namespace sbp {

/// f(a;k) for a ∈ [k:2k]: the number of Sylow p-double cosets of size p^a in
/// S_{pk}, together with their total Z.
struct CosetCountTable {
  unsigned p = 0;
  unsigned k = 0;
  std::vector<BigInt> f;  // f[a - k]
  BigInt Z;

  const BigInt& count(unsigned a) const { return f.at(a - k); }
};

/// Exact f(a;k) from the alternating-sum formula. k = 0 is accepted as the
/// degenerate S_0 case (f(0;0) = 1). Throws std::logic_error if the sum is
/// not divisible by p^a.
BigInt count_f(unsigned p, unsigned k, unsigned a);
BigInt count_f(unsigned p, unsigned k, unsigned a, const FactorialTable& factorials);

/// Term Γ_{j,a} = ((k-j)p)! j! C(k,j)² (p(p-1))^j C(j, 2k-a) of that sum.
BigInt alternating_term(unsigned p, unsigned k, unsigned j, unsigned a, const FactorialTable& factorials);

/// All f(a;k) plus Z. Throws std::logic_error unless Σ_a p^a f(a;k) = (pk)!.
CosetCountTable build_table(unsigned p, unsigned k);
/// Tables for every k' ∈ [0:k], sharing one factorial table; index by k'.
std::vector<CosetCountTable> build_tables_upto(unsigned p, unsigned k);

/// Throws std::invalid_argument unless the table has the right shape and
/// satisfies the partition identity. Used when a table is read from a file.
void validate_table(const CosetCountTable& table);

/// π̄(a) = f(a;k) / Z over [k:2k].
ExactDistribution lumped_stationary(const CosetCountTable& table);

/// Exact check of the bounds on f(a;k) and Z: the two-sided bound on
/// f(2k;k), the alternating-sum leading-term bound (with monotonicity of the
/// terms), and for p >= 11 the uniform bound on small cosets, the
/// small-to-maximal ratio bound and the share of maximal cosets in Z.
VerificationReport verify_count_bounds(unsigned p, unsigned k);

}  // namespace sbp
