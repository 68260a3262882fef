#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "sbp/counts.hpp"
#include "sbp/distribution.hpp"
#include "sbp/exact.hpp"
#include "sbp/report.hpp"

namespace sbp {

enum class KernelKind { burnside_lumped, coupon_q };

/// Exact transition matrix on the states [k:2k].
struct LumpedKernel {
  unsigned p = 0;
  unsigned k = 0;
  KernelKind kind = KernelKind::burnside_lumped;
  std::vector<std::vector<BigRational>> entries;  // entries[a - k][b - k]

  std::size_t size() const { return entries.size(); }
  unsigned first() const { return k; }
  unsigned last() const { return 2 * k; }
  const BigRational& operator()(unsigned a, unsigned b) const { return entries.at(a - k).at(b - k); }
};

/// The chain on double-coset exponents T(σ):
///
///   P̄(a,b) = Σ_{y=0}^{2k-max(a,b)} C(2k-a, y) ((p-1)/p)^y p^{a+b-2k}
///             · f(b-y; k-y) / (p(k-y))!
///
/// Sub-tables f(·; k') for k' < k are built internally; `table` supplies
/// f(·; k). Throws std::logic_error if a row fails to sum to 1.
LumpedKernel build_lumped(unsigned p, unsigned k, const CosetCountTable& table);
LumpedKernel build_lumped(unsigned p, unsigned k);

/// Upper-triangular kernel whose row a is the law of a + Binomial(2k-a, 1/p).
LumpedKernel build_q(unsigned p, unsigned k);

enum class PowerMode { exact, floating };

/// Exact mode for t <= 64, floating point above.
PowerMode default_mode(unsigned t);

ExactDistribution step_power_exact(const LumpedKernel& kernel, unsigned start, unsigned t);
FloatDistribution step_power_float(const LumpedKernel& kernel, unsigned start, unsigned t);
std::variant<ExactDistribution, FloatDistribution> step_power(const LumpedKernel& kernel, unsigned start, unsigned t,
                                                              PowerMode mode);

/// Exact t-step distributions from one start, advanced one step at a time.
/// Entries stay unreduced integers over a common denominator, so long runs
/// avoid gcd work.
class ExactEvolution {
 public:
  ExactEvolution(const LumpedKernel& kernel, unsigned start);

  void step();
  unsigned time() const { return t_; }
  const ScaledVector& current() const { return state_; }
  ExactDistribution distribution() const;

 private:
  ScaledMatrix matrix_;
  ScaledVector state_;
  unsigned first_;
  unsigned t_ = 0;
};

/// Same, in double precision.
class FloatEvolution {
 public:
  FloatEvolution(const LumpedKernel& kernel, unsigned start);

  void step();
  unsigned time() const { return t_; }
  const FloatDistribution& current() const { return state_; }

 private:
  std::vector<double> matrix_;
  FloatDistribution state_;
  std::size_t n_;
  unsigned t_ = 0;
};

struct Envelope {
  double center = 0;
  double radius = 0;
};

/// center = 1 - (1 - (1-1/p)^t)^{2k-a}, radius = 4p⁴/(p-1)! + t/(p-2)!.
/// Throws std::invalid_argument for p < 11, where the bound is not claimed.
Envelope cutoff_envelope(unsigned p, unsigned k, unsigned a, unsigned t);
/// The center as an exact rational (defined for every p; 0⁰ = 1).
BigRational envelope_center_exact(unsigned p, unsigned k, unsigned a, unsigned t);
/// 4p⁴/(p-1)! + t/(p-2)!.
BigRational envelope_radius_exact(unsigned p, unsigned t);
/// t/(p-2)! + 2p⁴/(p-1)!: the radius for the lumped chain.
BigRational lumped_radius_exact(unsigned p, unsigned t);

enum class ProfileRegime { fixed_k, cutoff };

/// fixed-k: 1 - (1 - e^{-c})^k (c >= 0).  cutoff: 1 - exp(-e^{-c}).
double limit_profile(ProfileRegime regime, unsigned k, double c);

/// Exact checks on the lumped chain for every start a and t ∈ [1:t_max]:
///   lumped-vs-q-tv              tv(P̄^t_a, Q^t_a) <= t/(p-2)!
///   stationary-near-top-state   tv(π̄, δ_2k) <= 2p⁴/(p-1)!         (p >= 11)
///   q-hitting-closed-form       Q^t_a(2k) = (1 - (1-1/p)^t)^{2k-a}  (t from 0)
///   geometric-tail-sandwich     1-e^{-(x-1)/p} <= 1-(1-1/p)^⌊x⌋ <= 1-e^{-x(1/p+1/p²)}
///                               at x = p log k + pc over a grid of c
///   lumped-envelope             |tv(P̄^t_a, π̄) - center| <= t/(p-2)! + 2p⁴/(p-1)!  (p >= 11)
VerificationReport verify_lumped_bounds(unsigned p, unsigned k, unsigned t_max);

/// π̄ P̄ = π̄ exactly.
VerificationReport check_stationarity(const LumpedKernel& kernel, const CosetCountTable& table);
/// π̄(a) P̄(a,b) = π̄(b) P̄(b,a) exactly.
VerificationReport check_reversibility(const LumpedKernel& kernel, const CosetCountTable& table);
/// P̄(a,b) >= (1 - 1/(p-2)!) Q(a,b) for a <= b.
VerificationReport check_q_domination(const LumpedKernel& lumped, const LumpedKernel& q);

}  // namespace sbp
