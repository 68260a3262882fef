#include "sbp/sylow.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sbp/rng.hpp"

namespace sbp {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

SylowContext::SylowContext(unsigned p, unsigned k) : p_(p), k_(k) {
  if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (k < 1 || k >= p) {
    throw std::invalid_argument("k = " + std::to_string(k) + " must satisfy 1 <= k < p = " + std::to_string(p));
  }
  if (n() > kMaxDegree) throw std::invalid_argument("p*k exceeds the maximum permutation degree");
  generators_.reserve(k);
  for (unsigned j = 0; j < k; ++j) {
    std::vector<Permutation::point_type> images(n());
    std::iota(images.begin(), images.end(), Permutation::point_type{0});
    const auto base = static_cast<Permutation::point_type>(j * p);
    for (unsigned m = 0; m < p; ++m) images[base + m] = base + (m + 1) % p;
    generators_.push_back(Permutation::from_images(std::move(images)));
  }
}

Permutation SylowContext::realize(const ExponentVector& v) const {
  if (v.exponents.size() != k_) throw std::invalid_argument("exponent vector has wrong length");
  std::vector<Permutation::point_type> images(n());
  for (unsigned j = 0; j < k_; ++j) {
    if (v.exponents[j] >= p_) throw std::invalid_argument("exponent out of range [0:p-1]");
    const auto base = static_cast<Permutation::point_type>(j * p_);
    for (unsigned m = 0; m < p_; ++m) images[base + m] = base + (m + v.exponents[j]) % p_;
  }
  return Permutation::from_images(std::move(images));
}

std::vector<Permutation> SylowContext::elements() const {
  std::vector<Permutation> out;
  ExponentVector v{std::vector<std::uint32_t>(k_, 0)};
  for (;;) {
    out.push_back(realize(v));
    int j = static_cast<int>(k_) - 1;
    while (j >= 0 && ++v.exponents[j] == p_) {
      v.exponents[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
  return out;
}

std::optional<ExponentVector> h_membership(const SylowContext& ctx, const Permutation& sigma) {
  if (sigma.degree() != ctx.n()) throw std::invalid_argument("h_membership: degree mismatch");
  const unsigned p = ctx.p();
  ExponentVector v{std::vector<std::uint32_t>(ctx.k(), 0)};
  for (unsigned j = 0; j < ctx.k(); ++j) {
    const unsigned base = j * p;
    const unsigned first = sigma[base];
    if (first < base || first >= base + p) return std::nullopt;
    const unsigned shift = first - base;
    for (unsigned m = 1; m < p; ++m) {
      if (sigma[base + m] != base + (m + shift) % p) return std::nullopt;
    }
    v.exponents[j] = shift;
  }
  return v;
}

unsigned weight_R(const ExponentVector& v) {
  return static_cast<unsigned>(std::count_if(v.exponents.begin(), v.exponents.end(), [](auto e) { return e != 0; }));
}

namespace {

// σ η_j σ⁻¹ is the cycle (σ(b_1) ... σ(b_p)) over block j. It lies in H iff the
// images sit in a single block and advance by a constant step modulo p.
bool axis_conjugates_into_h(const Permutation& sigma, unsigned p, unsigned j) {
  const unsigned base = j * p;
  const unsigned target_block = sigma[base] / p;
  const unsigned step = (sigma[base + 1] % p + p - sigma[base] % p) % p;
  for (unsigned m = 0; m < p; ++m) {
    const unsigned here = sigma[base + m];
    const unsigned next = sigma[base + (m + 1) % p];
    if (here / p != target_block) return false;
    if ((next % p + p - here % p) % p != step) return false;
  }
  return true;
}

}  // namespace

std::vector<unsigned> stabilizer_axes(const SylowContext& ctx, const Permutation& sigma) {
  if (sigma.degree() != ctx.n()) throw std::invalid_argument("stabilizer_axes: degree mismatch");
  std::vector<unsigned> axes;
  for (unsigned j = 0; j < ctx.k(); ++j) {
    if (axis_conjugates_into_h(sigma, ctx.p(), j)) axes.push_back(j + 1);
  }
  return axes;
}

unsigned coset_exponent_T(const SylowContext& ctx, const Permutation& sigma) {
  return 2 * ctx.k() - static_cast<unsigned>(stabilizer_axes(ctx, sigma).size());
}

StabilizerSample sample_stabilizer(const SylowContext& ctx, const Permutation& sigma, Rng& rng) {
  ExponentVector v{std::vector<std::uint32_t>(ctx.k(), 0)};
  for (unsigned j : stabilizer_axes(ctx, sigma)) v.exponents[j - 1] = static_cast<std::uint32_t>(rng.below(ctx.p()));
  Permutation g = ctx.realize(v);
  Permutation h = conjugate(sigma, g);
  return {std::move(h), std::move(g), std::move(v)};
}

BigInt fixed_point_count(const SylowContext& ctx, unsigned y) {
  if (y > ctx.k()) throw std::invalid_argument("fixed_point_count: y must lie in [0:k]");
  const unsigned long p = ctx.p();
  return factorial((ctx.k() - y) * p) * factorial(y) * ipow(BigInt(p), y);
}

namespace {

struct FixedAndCycles {
  std::vector<Permutation::point_type> fixed;
  std::vector<std::vector<Permutation::point_type>> p_cycles;
};

FixedAndCycles split_fixed_and_p_cycles(const Permutation& x, unsigned p, const char* name) {
  FixedAndCycles out;
  for (std::size_t a = 0; a < x.degree(); ++a) {
    if (x[a] == a) out.fixed.push_back(static_cast<Permutation::point_type>(a));
  }
  out.p_cycles = cycles(x);
  for (const auto& c : out.p_cycles) {
    if (c.size() != p) {
      throw std::invalid_argument(std::string("sample_fixed_points: ") + name + " has a cycle of length " +
                                  std::to_string(c.size()) + ", expected only fixed points and p-cycles");
    }
  }
  return out;
}

}  // namespace

Permutation sample_fixed_points(const SylowContext& ctx, const Permutation& h, const Permutation& g, Rng& rng) {
  if (h.degree() != ctx.n() || g.degree() != ctx.n()) throw std::invalid_argument("sample_fixed_points: degree mismatch");
  const unsigned p = ctx.p();
  const auto g_parts = split_fixed_and_p_cycles(g, p, "g");
  auto h_parts = split_fixed_and_p_cycles(h, p, "h");
  if (g_parts.p_cycles.size() != h_parts.p_cycles.size()) {
    throw std::invalid_argument("sample_fixed_points: h and g have different numbers of p-cycles (" +
                                std::to_string(h_parts.p_cycles.size()) + " vs " +
                                std::to_string(g_parts.p_cycles.size()) + ")");
  }

  std::vector<Permutation::point_type> tau(ctx.n());

  // Uniform bijection ρ : F(g) → F(h).
  auto& targets = h_parts.fixed;
  for (std::size_t i = targets.size(); i > 1; --i) std::swap(targets[i - 1], targets[rng.below(i)]);
  for (std::size_t i = 0; i < g_parts.fixed.size(); ++i) tau[g_parts.fixed[i]] = targets[i];

  // Offsets c_i, then γ ∈ S_y; τ(a_{i,j}) = b_{γ(i), j + c_i mod p}.
  const std::size_t y = g_parts.p_cycles.size();
  std::vector<unsigned> offsets(y);
  for (auto& c : offsets) c = static_cast<unsigned>(rng.below(p));
  std::vector<std::size_t> gamma(y);
  std::iota(gamma.begin(), gamma.end(), std::size_t{0});
  for (std::size_t i = y; i > 1; --i) std::swap(gamma[i - 1], gamma[rng.below(i)]);
  for (std::size_t i = 0; i < y; ++i) {
    const auto& source = g_parts.p_cycles[i];
    const auto& target = h_parts.p_cycles[gamma[i]];
    for (unsigned j = 0; j < p; ++j) tau[source[j]] = target[(j + offsets[i]) % p];
  }
  return Permutation::from_images(std::move(tau));
}

Permutation burnside_step(const SylowContext& ctx, const Permutation& sigma, Rng& rng) {
  const auto stab = sample_stabilizer(ctx, sigma, rng);
  return sample_fixed_points(ctx, stab.h, stab.g, rng);
}

}  // namespace sbp
