#include "sbp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "sbp/lumped.hpp"
#include "sbp/sylow.hpp"

namespace sbp {

namespace {

std::string instance(unsigned p, unsigned k) { return "p=" + std::to_string(p) + " k=" + std::to_string(k); }

std::size_t checked_state_count(unsigned p, unsigned k) {
  SylowContext ctx(p, k);  // validates p, k
  std::size_t count = 1;
  for (std::size_t m = 2; m <= ctx.n(); ++m) {
    count *= m;
    if (count > kOracleStateLimit) {
      throw InstanceTooLarge("(pk)! exceeds " + std::to_string(kOracleStateLimit) + " at " + instance(p, k));
    }
  }
  return count;
}

/// σg = hσ, i.e. h⁻¹σg = σ.
bool fixes(const Permutation& h, const Permutation& g, const Permutation& sigma) {
  for (std::size_t a = 0; a < sigma.degree(); ++a) {
    if (h[sigma[a]] != sigma[g[a]]) return false;
  }
  return true;
}

/// Number of nonzero base-p digits of an element index, i.e. its p-cycle count.
unsigned element_weight(std::size_t index, unsigned p, unsigned k) {
  unsigned weight = 0;
  for (unsigned j = 0; j < k; ++j) {
    if (index % p != 0) ++weight;
    index /= p;
  }
  return weight;
}

std::string state_name(const FullKernel& kernel, std::size_t i) { return to_one_line_string(kernel.state(i)); }

ScaledVector integer_vector(std::vector<BigInt> values) {
  ScaledVector v;
  v.num = std::move(values);
  v.den = 1;
  return v;
}

/// out == λ · in, entrywise and exactly.
bool is_multiple(const ScaledVector& out, const ScaledVector& in, const BigRational& lambda) {
  const BigInt lhs_scale = in.den * lambda.get_den();
  const BigInt rhs_scale = lambda.get_num() * out.den;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (out.num[i] * lhs_scale != in.num[i] * rhs_scale) return false;
  }
  return true;
}

}  // namespace

DoubleCosetCensus enumerate_double_cosets(unsigned p, unsigned k) {
  checked_state_count(p, k);
  const SylowContext ctx(p, k);
  DoubleCosetCensus census;
  census.p = p;
  census.k = k;
  census.states = all_permutations(ctx.n());
  const auto elements = ctx.elements();
  std::vector<Permutation> inverses;
  inverses.reserve(elements.size());
  for (const auto& h : elements) inverses.push_back(inverse(h));

  constexpr auto unseen = std::numeric_limits<std::uint32_t>::max();
  census.coset_of.assign(census.size(), unseen);
  census.exponent.assign(census.size(), 0);
  for (std::size_t i = 0; i < census.size(); ++i) {
    if (census.coset_of[i] != unseen) continue;
    const auto id = static_cast<std::uint32_t>(census.representative.size());
    std::vector<std::size_t> members;
    for (const auto& h_inv : inverses) {
      const Permutation left = compose(h_inv, census.states[i]);
      for (const auto& g : elements) {
        const std::size_t j = lexicographic_rank(compose(left, g));
        if (census.coset_of[j] == unseen) {
          census.coset_of[j] = id;
          members.push_back(j);
        }
      }
    }
    std::uint32_t exponent = 0;
    std::size_t size = 1;
    while (size < members.size()) {
      size *= p;
      ++exponent;
    }
    if (size != members.size()) {
      throw std::logic_error("double coset of size " + std::to_string(members.size()) + " is not a power of p");
    }
    for (std::size_t j : members) census.exponent[j] = exponent;
    census.representative.push_back(static_cast<std::uint32_t>(i));
    census.coset_size.push_back(static_cast<std::uint32_t>(members.size()));
  }
  return census;
}

CosetCountTable census_double_cosets(unsigned p, unsigned k) {
  const auto census = enumerate_double_cosets(p, k);
  CosetCountTable table{p, k, std::vector<BigInt>(k + 1, BigInt(0)), 0};
  for (std::size_t c = 0; c < census.coset_count(); ++c) {
    const unsigned a = census.exponent[census.representative[c]];
    if (a < k || a > 2 * k) throw std::logic_error("double coset exponent outside [k:2k]");
    table.f[a - k] += 1;
  }
  table.Z = static_cast<unsigned long>(census.coset_count());
  return table;
}

FullKernel::FullKernel(DoubleCosetCensus census) : census_(std::move(census)) {
  const SylowContext ctx(census_.p, census_.k);
  const auto elements = ctx.elements();
  const std::size_t h_order = elements.size();
  group_order_ = h_order * h_order;
  const std::size_t n_states = census_.size();

  stabilizer_.assign(n_states, {});
  fixed_.assign(group_order_, {});
  for (std::size_t i = 0; i < n_states; ++i) {
    for (std::size_t hi = 0; hi < h_order; ++hi) {
      for (std::size_t gi = 0; gi < h_order; ++gi) {
        if (!fixes(elements[hi], elements[gi], census_.states[i])) continue;
        const auto pair = static_cast<std::uint32_t>(hi * h_order + gi);
        stabilizer_[i].push_back(pair);
        fixed_[pair].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }

  scale_ = static_cast<std::int64_t>(group_order_) * static_cast<std::int64_t>(n_states);
  orbit_weight_.resize(n_states);
  for (std::size_t i = 0; i < n_states; ++i) {
    if (group_order_ % stabilizer_[i].size() != 0) throw std::logic_error("stabiliser order does not divide |H×H|");
    orbit_weight_[i] = static_cast<std::int64_t>(group_order_ / stabilizer_[i].size());
  }
  pair_weight_.assign(group_order_, 0);
  for (std::size_t pair = 0; pair < group_order_; ++pair) {
    const std::size_t size = fixed_[pair].size();
    if (size == 0) continue;
    if (n_states % size != 0) throw std::logic_error("fixed-set size does not divide (pk)!");
    pair_weight_[pair] = static_cast<std::int64_t>(n_states / size);
  }
}

std::int64_t FullKernel::entry(std::size_t sigma, std::size_t tau) const {
  const auto& a = stabilizer_[sigma];
  const auto& b = stabilizer_[tau];
  std::int64_t total = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      total += pair_weight_[*ia];
      ++ia;
      ++ib;
    }
  }
  return total * orbit_weight_[sigma];
}

std::vector<std::int64_t> FullKernel::row(std::size_t sigma) const {
  std::vector<std::int64_t> out(size(), 0);
  for (std::uint32_t pair : stabilizer_[sigma]) {
    const std::int64_t w = orbit_weight_[sigma] * pair_weight_[pair];
    for (std::uint32_t tau : fixed_[pair]) out[tau] += w;
  }
  return out;
}

BigRational FullKernel::probability(std::size_t sigma, std::size_t tau) const {
  BigRational q(BigInt(static_cast<long>(entry(sigma, tau))), BigInt(static_cast<long>(scale_)));
  q.canonicalize();
  return q;
}

ScaledVector FullKernel::apply_left(const ScaledVector& v) const {
  if (v.size() != size()) throw std::invalid_argument("apply_left: vector has the wrong length");
  std::vector<BigInt> through(group_order_);
  for (std::size_t pair = 0; pair < group_order_; ++pair) {
    if (fixed_[pair].empty()) continue;
    BigInt& acc = through[pair];
    for (std::uint32_t sigma : fixed_[pair]) {
      if (v.num[sigma] != 0) mpz_addmul_ui(acc.get_mpz_t(), v.num[sigma].get_mpz_t(), static_cast<unsigned long>(orbit_weight_[sigma]));
    }
    acc *= static_cast<long>(pair_weight_[pair]);
  }
  ScaledVector out;
  out.num.assign(size(), BigInt(0));
  for (std::size_t tau = 0; tau < size(); ++tau) {
    for (std::uint32_t pair : stabilizer_[tau]) out.num[tau] += through[pair];
  }
  out.den = v.den * static_cast<long>(scale_);
  return out;
}

ScaledVector FullKernel::apply_right(const ScaledVector& f) const {
  if (f.size() != size()) throw std::invalid_argument("apply_right: vector has the wrong length");
  std::vector<BigInt> through(group_order_);
  for (std::size_t pair = 0; pair < group_order_; ++pair) {
    if (fixed_[pair].empty()) continue;
    BigInt& acc = through[pair];
    for (std::uint32_t tau : fixed_[pair]) acc += f.num[tau];
    acc *= static_cast<long>(pair_weight_[pair]);
  }
  ScaledVector out;
  out.num.assign(size(), BigInt(0));
  for (std::size_t sigma = 0; sigma < size(); ++sigma) {
    BigInt& acc = out.num[sigma];
    for (std::uint32_t pair : stabilizer_[sigma]) acc += through[pair];
    acc *= static_cast<long>(orbit_weight_[sigma]);
  }
  out.den = f.den * static_cast<long>(scale_);
  return out;
}

ScaledVector FullKernel::stationary() const {
  ScaledVector pi;
  pi.num.reserve(size());
  for (const auto& stab : stabilizer_) pi.num.emplace_back(static_cast<unsigned long>(stab.size()));
  pi.den = BigInt(static_cast<unsigned long>(census_.coset_count())) * static_cast<unsigned long>(group_order_);
  return pi;
}

ScaledVector FullKernel::point_mass(std::size_t i) const {
  ScaledVector v;
  v.num.assign(size(), BigInt(0));
  v.num.at(i) = 1;
  v.den = 1;
  return v;
}

ScaledVector FullKernel::lump(const ScaledVector& v) const {
  ScaledVector out;
  out.num.assign(k() + 1, BigInt(0));
  for (std::size_t i = 0; i < size(); ++i) out.num[census_.exponent[i] - k()] += v.num[i];
  out.den = v.den;
  return out;
}

FullKernel build_full_kernel(unsigned p, unsigned k) { return FullKernel(enumerate_double_cosets(p, k)); }

VerificationReport verify_full_kernel(const FullKernel& kernel) {
  const unsigned p = kernel.p();
  const unsigned k = kernel.k();
  const SylowContext ctx(p, k);
  VerificationReport report("full-kernel " + instance(p, k));
  const std::size_t n = kernel.size();

  // P 1 = 1
  {
    ScaledVector ones = integer_vector(std::vector<BigInt>(n, BigInt(1)));
    const auto sums = kernel.apply_right(ones);
    for (std::size_t i = 0; i < n; ++i) {
      report.record("stochastic", sums.num[i] == sums.den,
                    [&] { return "row " + state_name(kernel, i) + " does not sum to 1"; });
    }
  }

  // π(σ)P(σ,τ) ∝ |G_σ| P(σ,τ) is symmetric.
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t gi = static_cast<std::int64_t>(kernel.stabilizer(i).size());
    bool ok = true;
    std::size_t bad = 0;
    for (std::size_t j = i + 1; j < n && ok; ++j) {
      const std::int64_t gj = static_cast<std::int64_t>(kernel.stabilizer(j).size());
      if (gi * kernel.entry(i, j) != gj * kernel.entry(j, i)) {
        ok = false;
        bad = j;
      }
    }
    report.record("reversible", ok, [&] {
      return "detailed balance fails between " + state_name(kernel, i) + " and " + state_name(kernel, bad);
    });
  }

  // π P = π
  {
    const auto pi = kernel.stationary();
    BigInt mass = 0;
    for (const auto& x : pi.num) mass += x;
    report.record("stationary-normalised", mass == pi.den, "π does not sum to 1");
    const auto moved = kernel.apply_left(pi);
    for (std::size_t i = 0; i < n; ++i) {
      report.record("stationary", compare(moved.at(i), pi.at(i)) == 0,
                    [&] { return "(πP)(σ) != π(σ) at σ=" + state_name(kernel, i); });
    }
  }

  // Fixed sets against ((k-y)p)! y! p^y; empty exactly when cycle counts differ.
  {
    std::size_t h_order = 1;
    for (unsigned j = 0; j < k; ++j) h_order *= p;
    for (std::uint32_t pair = 0; pair < kernel.group_order(); ++pair) {
      const unsigned yh = element_weight(pair / h_order, p, k);
      const unsigned yg = element_weight(pair % h_order, p, k);
      const std::size_t size = kernel.fixed_states(pair).size();
      if (yh != yg) {
        report.record("fixed-set-size", size == 0, [&] { return "pair " + std::to_string(pair) + " fixes states"; });
        continue;
      }
      const BigInt expected = fixed_point_count(ctx, yh);
      report.record("fixed-set-size", expected == static_cast<unsigned long>(size), [&] {
        return "pair " + std::to_string(pair) + " fixes " + std::to_string(size) + " states, formula gives " +
               to_string(expected);
      });
    }
  }

  // |G_σ| = p^{|A|}, T(σ) from the census = coset_exponent_T.
  for (std::size_t i = 0; i < n; ++i) {
    const auto axes = stabilizer_axes(ctx, kernel.state(i));
    std::size_t order = 1;
    for (std::size_t m = 0; m < axes.size(); ++m) order *= p;
    report.record("stabilizer-order", order == kernel.stabilizer(i).size(), [&] {
      return "|G_σ| = " + std::to_string(kernel.stabilizer(i).size()) + " but p^|A| = " + std::to_string(order) +
             " at σ=" + state_name(kernel, i);
    });
    const unsigned t_sigma = coset_exponent_T(ctx, kernel.state(i));
    report.record("coset-exponent", t_sigma == kernel.exponent(i), [&] {
      return "T(σ) = " + std::to_string(t_sigma) + " but the census gives " + std::to_string(kernel.exponent(i)) +
             " at σ=" + state_name(kernel, i);
    });
  }

  // Census against the closed-form counts.
  {
    const auto formula = build_table(p, k);
    std::vector<BigInt> census(k + 1, BigInt(0));
    const auto& c = kernel.census();
    for (std::size_t id = 0; id < c.coset_count(); ++id) census[c.exponent[c.representative[id]] - k] += 1;
    for (unsigned a = k; a <= 2 * k; ++a) {
      report.record("census-vs-count-f", census[a - k] == formula.count(a), [&] {
        return "census " + to_string(census[a - k]) + " vs formula " + to_string(formula.count(a)) + " at a=" +
               std::to_string(a);
      });
    }
  }
  return report;
}

VerificationReport verify_lumping(const FullKernel& kernel) {
  const unsigned p = kernel.p();
  const unsigned k = kernel.k();
  VerificationReport report("lumping " + instance(p, k));
  const auto lumped = build_lumped(p, k);
  const std::size_t width = k + 1;

  // Per pair: how many of its fixed states lie in each class.
  std::vector<std::vector<std::int64_t>> class_count(kernel.group_order());
  for (std::uint32_t pair = 0; pair < kernel.group_order(); ++pair) {
    if (kernel.fixed_states(pair).empty()) continue;
    class_count[pair].assign(width, 0);
    for (std::uint32_t tau : kernel.fixed_states(pair)) ++class_count[pair][kernel.exponent(tau) - k];
  }
  const std::int64_t group_order = static_cast<std::int64_t>(kernel.group_order());
  const std::int64_t n_states = static_cast<std::int64_t>(kernel.size());

  std::map<unsigned, std::pair<std::size_t, std::vector<std::int64_t>>> reference;
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    std::vector<std::int64_t> mass(width, 0);
    const std::int64_t orbit = group_order / static_cast<std::int64_t>(kernel.stabilizer(i).size());
    for (std::uint32_t pair : kernel.stabilizer(i)) {
      const std::int64_t w = orbit * (n_states / static_cast<std::int64_t>(kernel.fixed_states(pair).size()));
      for (std::size_t b = 0; b < width; ++b) mass[b] += w * class_count[pair][b];
    }
    const unsigned a = kernel.exponent(i);
    auto it = reference.find(a);
    if (it == reference.end()) {
      reference.emplace(a, std::make_pair(i, std::move(mass)));
      continue;
    }
    report.record("lumped-rows-agree", mass == it->second.second, [&] {
      return "rows " + state_name(kernel, it->second.first) + " and " + state_name(kernel, i) +
             " share T=" + std::to_string(a) + " but lump differently";
    });
  }

  for (unsigned a = k; a <= 2 * k; ++a) {
    auto it = reference.find(a);
    if (it == reference.end()) {
      report.note("lumped-rows-match-formula", "no state has T=" + std::to_string(a) + "; row not compared");
      continue;
    }
    for (unsigned b = k; b <= 2 * k; ++b) {
      BigRational got(BigInt(static_cast<long>(it->second.second[b - k])), BigInt(static_cast<long>(kernel.scale())));
      got.canonicalize();
      report.record("lumped-rows-match-formula", got == lumped(a, b), [&] {
        return "lumped P(" + std::to_string(a) + "," + std::to_string(b) + ") = " + to_string(got) + " vs formula " +
               to_string(lumped(a, b));
      });
    }
  }
  return report;
}

VerificationReport verify_conditional_uniformity(const FullKernel& kernel, unsigned t_max) {
  const unsigned k = kernel.k();
  VerificationReport report("conditional-uniformity " + instance(kernel.p(), k) + " t_max=" + std::to_string(t_max));
  std::vector<std::size_t> top;
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    if (kernel.exponent(i) == 2 * k) top.push_back(i);
  }
  if (top.empty()) {
    report.skip("conditional-uniform", "no state has T = 2k");
    return report;
  }
  const auto pi = kernel.stationary();
  bool pi_uniform = true;
  for (std::size_t i : top) pi_uniform = pi_uniform && pi.num[i] == pi.num[top.front()];
  report.record("stationary-uniform-on-top", pi_uniform, "π is not constant on T = 2k");

  for (std::size_t start = 0; start < kernel.size(); ++start) {
    ScaledVector v = kernel.point_mass(start);
    for (unsigned t = 1; t <= t_max; ++t) {
      v = kernel.apply_left(v);
      std::size_t bad = top.front();
      bool ok = true;
      for (std::size_t i : top) {
        if (v.num[i] != v.num[top.front()]) {
          ok = false;
          bad = i;
          break;
        }
      }
      report.record("conditional-uniform", ok, [&] {
        return "P^t_σ(·|T=2k) not uniform: σ=" + state_name(kernel, start) + " t=" + std::to_string(t) + " differs at " +
               state_name(kernel, bad);
      });
    }
  }
  return report;
}

VerificationReport verify_tv_sandwich(const FullKernel& kernel, unsigned t_max) {
  const unsigned p = kernel.p();
  const unsigned k = kernel.k();
  VerificationReport report("tv-sandwich " + instance(p, k) + " t_max=" + std::to_string(t_max));
  const auto table = build_table(p, k);
  const auto lumped = build_lumped(p, k, table);
  ScaledVector pi_bar;
  pi_bar.num = table.f;
  pi_bar.den = table.Z;
  const auto pi = kernel.stationary();

  // P̄^t_a for every a and t, shared by all starts with T = a.
  std::vector<std::vector<ScaledVector>> lumped_path(k + 1);
  std::vector<std::vector<Fraction>> lumped_tv(k + 1);
  for (unsigned a = k; a <= 2 * k; ++a) {
    ExactEvolution chain(lumped, a);
    for (unsigned t = 0; t <= t_max; ++t) {
      if (t > 0) chain.step();
      lumped_path[a - k].push_back(chain.current());
      lumped_tv[a - k].push_back(tv_distance(chain.current(), pi_bar));
    }
  }

  double worst_gap = 0;
  std::string worst_at = "none";
  for (std::size_t start = 0; start < kernel.size(); ++start) {
    const unsigned a = kernel.exponent(start);
    ScaledVector v = kernel.point_mass(start);
    for (unsigned t = 0; t <= t_max; ++t) {
      if (t > 0) v = kernel.apply_left(v);
      const auto projected = kernel.lump(v);
      const auto& expected = lumped_path[a - k][t];
      bool same = true;
      for (std::size_t b = 0; b <= k; ++b) same = same && compare(projected.at(b), expected.at(b)) == 0;
      report.record("lumped-marginal", same, [&] {
        return "lumped law of P^t_σ differs from P̄^t_a at σ=" + state_name(kernel, start) + " t=" + std::to_string(t);
      });
      const Fraction full = tv_distance(v, pi);
      const Fraction& low = lumped_tv[a - k][t];
      report.record("lumped-tv-below-full", compare(low, full) <= 0, [&] {
        return "tv(P̄^t_a, π̄) = " + std::to_string(low.to_double()) + " > tv(P^t_σ, π) = " +
               std::to_string(full.to_double()) + " at σ=" + state_name(kernel, start) + " t=" + std::to_string(t);
      });
      if (t > 0) {
        const double gap = std::fabs(full.to_double() - envelope_center_exact(p, k, a, t).get_d());
        if (gap > worst_gap) {
          worst_gap = gap;
          worst_at = "σ=" + state_name(kernel, start) + " t=" + std::to_string(t);
        }
      }
    }
  }
  std::ostringstream note;
  note.precision(6);
  note << "max |tv(P^t_σ, π) - envelope center| = " << worst_gap << " at " << worst_at
       << "; the envelope radius 4p^4/(p-1)! + t/(p-2)! is only claimed for p >= 11";
  report.note("envelope-gap", note.str());
  return report;
}

K1Spectrum k1_spectrum(unsigned p) {
  if (!is_prime(p)) throw std::invalid_argument("k1_spectrum: p must be prime");
  K1Spectrum s;
  s.p = p;
  s.n1 = p - 1;
  const BigInt fp1 = factorial(p - 1);
  s.n2 = (fp1 - (p - 1)) / p;
  const BigRational mu = 1 - BigRational(1, p);
  BigRational lambda = mu - BigRational(BigInt(p - 1), BigInt(p) * factorial(p - 2));
  lambda.canonicalize();
  s.eigenvalues = {BigRational(1), mu, lambda, BigRational(0)};
  const BigInt fp = factorial(p);
  s.multiplicities = {BigInt(1), BigInt(p - 2), BigInt(1), BigInt(fp - p)};
  return s;
}

BigRational k1_exact_tv(unsigned p, StartClass start, unsigned t) {
  if (t < 1) throw std::invalid_argument("k1_exact_tv: t must be at least 1");
  const auto s = k1_spectrum(p);
  const BigRational mu_t = rpow(s.eigenvalues[1], t);
  const BigRational lambda_t = rpow(s.eigenvalues[2], t);
  const BigRational total(s.n1 + s.n2);
  if (start == StartClass::size_p) {
    BigRational c(s.n2, s.n1 * (s.n1 + s.n2));
    c.canonicalize();
    return (1 - BigRational(1) / BigRational(s.n1)) * mu_t + c * lambda_t;
  }
  return BigRational(s.n1) / total * lambda_t;
}

namespace {

void require_k1(const FullKernel& kernel, const char* what) {
  if (kernel.k() != 1) throw std::invalid_argument(std::string(what) + " needs k = 1");
}

}  // namespace

VerificationReport verify_k1_kernel(const FullKernel& kernel) {
  require_k1(kernel, "verify_k1_kernel");
  const unsigned p = kernel.p();
  VerificationReport report("k1-kernel p=" + std::to_string(p));
  // Over scale = p²·p!: 1/p! -> p², 1/(p·p!) -> p, (p-1)/p² -> (p-1)·p!.
  const std::int64_t fp = static_cast<std::int64_t>(kernel.size());
  const std::int64_t big = static_cast<std::int64_t>(p) * p;
  const std::int64_t small = p;
  const std::int64_t same = (static_cast<std::int64_t>(p) - 1) * fp + small;
  const auto& census = kernel.census();
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    const auto row = kernel.row(i);
    bool ok = true;
    std::size_t bad = 0;
    for (std::size_t j = 0; j < row.size() && ok; ++j) {
      std::int64_t expected = big;
      if (kernel.exponent(i) == 1) expected = census.coset_of[i] == census.coset_of[j] ? same : small;
      if (row[j] != expected) {
        ok = false;
        bad = j;
      }
    }
    report.record("k1-kernel-entries", ok, [&] {
      return "P(" + state_name(kernel, i) + "," + state_name(kernel, bad) + ") = " + to_string(kernel.probability(i, bad)) +
             " disagrees with the closed form";
    });
  }
  return report;
}

VerificationReport verify_k1_spectrum(const FullKernel& kernel, unsigned t_max) {
  require_k1(kernel, "verify_k1_spectrum");
  const unsigned p = kernel.p();
  const std::size_t n = kernel.size();
  VerificationReport report("k1-spectrum p=" + std::to_string(p));
  const auto expected = k1_spectrum(p);
  const auto& census = kernel.census();

  // Classes: each size-p coset on its own, all of B together (id = n1).
  std::vector<std::uint32_t> small_cosets;
  std::map<std::uint32_t, std::uint32_t> small_index;
  for (std::uint32_t c = 0; c < census.coset_count(); ++c) {
    if (census.coset_size[c] == p) {
      small_index[c] = static_cast<std::uint32_t>(small_cosets.size());
      small_cosets.push_back(c);
    }
  }
  const std::size_t n1 = small_cosets.size();
  const std::size_t n2 = census.coset_count() - n1;
  std::vector<std::uint32_t> cls(n);
  std::vector<std::size_t> class_size(n1 + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    cls[i] = kernel.exponent(i) == 1 ? small_index.at(census.coset_of[i]) : static_cast<std::uint32_t>(n1);
    ++class_size[cls[i]];
  }
  report.record("coset-class-counts", expected.n1 == static_cast<unsigned long>(n1) && expected.n2 == static_cast<unsigned long>(n2),
                [&] { return "census has n1=" + std::to_string(n1) + " n2=" + std::to_string(n2); });

  // Multiplicities, and the dimension of each spanning family.
  {
    BigInt total = 0;
    for (const auto& m : expected.multiplicities) total += m;
    report.record("multiplicities-sum", total == static_cast<unsigned long>(n), "multiplicities do not sum to p!");
    std::size_t zero_family = 0;
    for (std::size_t c = 0; c <= n1; ++c) zero_family += class_size[c] - 1;
    const bool dims = expected.multiplicities[1] == static_cast<unsigned long>(n1 - 1) &&
                      expected.multiplicities[3] == static_cast<unsigned long>(zero_family);
    report.record("family-dimensions", dims, "spanning-family sizes differ from the multiplicities");
  }

  const BigRational& mu = expected.eigenvalues[1];
  const BigRational& lambda = expected.eigenvalues[2];
  auto check_pair = [&](const std::string& family, const ScaledVector& right, const ScaledVector& left,
                        const BigRational& value) {
    report.record(family + "-right", is_multiple(kernel.apply_right(right), right, value),
                  [&] { return "P f != λ f for eigenvalue " + to_string(value); });
    report.record(family + "-left", is_multiple(kernel.apply_left(left), left, value),
                  [&] { return "v P != λ v for eigenvalue " + to_string(value); });
  };

  // Eigenvalue 1: constants on the right, π on the left.
  check_pair("eigenvalue-one", integer_vector(std::vector<BigInt>(n, BigInt(1))), kernel.stationary(), BigRational(1));

  // Eigenvalue 1 - 1/p: 1_{C_1} - 1_{C_j} for j >= 2 spans Σ c_j 1_{C_j}, Σ c_j = 0.
  for (std::size_t j = 1; j < n1; ++j) {
    std::vector<BigInt> v(n, BigInt(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (cls[i] == 0) v[i] = 1;
      if (cls[i] == j) v[i] = -1;
    }
    const auto vec = integer_vector(std::move(v));
    check_pair("eigenvalue-mu", vec, vec, mu);
  }

  // Eigenvalue λ: n1 n2 ((1/n1)1_A - (1/n2)1_B) on the right and
  // p² n1 n2 ψ̃ = p n2 1_A - n1 1_B on the left.
  {
    std::vector<BigInt> right(n), left(n);
    for (std::size_t i = 0; i < n; ++i) {
      const bool in_a = cls[i] < n1;
      right[i] = in_a ? BigInt(static_cast<unsigned long>(n2)) : -BigInt(static_cast<unsigned long>(n1));
      left[i] = in_a ? BigInt(static_cast<unsigned long>(p * n2)) : -BigInt(static_cast<unsigned long>(n1));
    }
    check_pair("eigenvalue-lambda", integer_vector(std::move(right)), integer_vector(std::move(left)), lambda);
  }

  // Eigenvalue 0: e_σ - e_σ' within a class is killed on the left iff rows σ
  // and σ' agree, and on the right iff every row is constant on the class.
  {
    std::vector<std::vector<std::int64_t>> reference(n1 + 1);
    std::vector<std::size_t> reference_state(n1 + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto row = kernel.row(i);
      std::vector<std::int64_t> first_value(n1 + 1, -1);
      bool constant = true;
      for (std::size_t j = 0; j < n && constant; ++j) {
        auto& seen = first_value[cls[j]];
        if (seen < 0) seen = row[j];
        constant = seen == row[j];
      }
      report.record("eigenvalue-zero-right", constant,
                    [&] { return "row " + state_name(kernel, i) + " is not constant on a class"; });
      auto& ref = reference[cls[i]];
      if (ref.empty()) {
        ref = std::move(row);
        reference_state[cls[i]] = i;
      } else {
        report.record("eigenvalue-zero-left", row == ref, [&] {
          return "rows " + state_name(kernel, reference_state[cls[i]]) + " and " + state_name(kernel, i) + " differ";
        });
      }
    }
  }

  // P^t rows from one start per double coset against their closed forms.
  {
    const BigRational total(BigInt(static_cast<unsigned long>(n1 + n2)));
    const BigRational pl(p);
    const BigRational n1q(BigInt(static_cast<unsigned long>(n1)));
    const BigRational n2q(BigInt(static_cast<unsigned long>(n2)));
    const BigRational pi_a = 1 / (total * pl);
    const BigRational pi_b = 1 / (total * pl * pl);
    const BigRational psi_a = 1 / (pl * n1q);
    const BigRational psi_b = -1 / (pl * pl * n2q);
    for (std::size_t c = 0; c < census.coset_count(); ++c) {
      const std::size_t start = census.representative[c];
      const bool small_start = census.coset_size[c] == p;
      ScaledVector v = kernel.point_mass(start);
      for (unsigned t = 1; t <= t_max; ++t) {
        v = kernel.apply_left(v);
        const BigRational mu_t = rpow(mu, t);
        const BigRational lambda_t = rpow(lambda, t);
        // Closed-form values on: the start's coset, other cosets in A, B.
        BigRational own, other, rest;
        if (small_start) {
          const BigRational w = n2q / total * lambda_t;
          own = mu_t * (1 / pl - psi_a) + w * psi_a + pi_a;
          other = mu_t * (-psi_a) + w * psi_a + pi_a;
          rest = w * psi_b + pi_b;
        } else {
          const BigRational w = -(n1q / total) * lambda_t;
          own = w * psi_b + pi_b;
          other = w * psi_a + pi_a;
          rest = own;
        }
        bool ok = true;
        std::size_t bad = 0;
        for (std::size_t i = 0; i < n && ok; ++i) {
          const BigRational& expected =
              census.coset_of[i] == c ? own : (kernel.exponent(i) == 1 ? other : rest);
          if (compare(v.at(i), Fraction(expected)) != 0) {
            ok = false;
            bad = i;
          }
        }
        report.record("power-closed-form", ok, [&] {
          return "P^t_σ(τ) differs from the closed form at σ=" + state_name(kernel, start) + " τ=" +
                 state_name(kernel, bad) + " t=" + std::to_string(t);
        });
      }
    }
  }
  return report;
}

VerificationReport verify_k1_spectrum(unsigned p) { return verify_k1_spectrum(build_full_kernel(p, 1)); }

VerificationReport verify_k1_tv(const FullKernel& kernel, unsigned t_max) {
  require_k1(kernel, "verify_k1_tv");
  const unsigned p = kernel.p();
  VerificationReport report("k1-tv p=" + std::to_string(p) + " t_max=" + std::to_string(t_max));
  const auto pi = kernel.stationary();
  const auto& census = kernel.census();
  for (std::size_t c = 0; c < census.coset_count(); ++c) {
    const std::size_t start = census.representative[c];
    const StartClass cls = census.coset_size[c] == p ? StartClass::size_p : StartClass::size_p2;
    ScaledVector v = kernel.point_mass(start);
    for (unsigned t = 1; t <= t_max; ++t) {
      v = kernel.apply_left(v);
      const Fraction tv = tv_distance(v, pi);
      const BigRational expected = k1_exact_tv(p, cls, t);
      report.record("k1-exact-tv", compare(tv, Fraction(expected)) == 0, [&] {
        return "tv = " + to_string(tv.reduced()) + " vs closed form " + to_string(expected) + " at σ=" +
               state_name(kernel, start) + " t=" + std::to_string(t);
      });
    }
  }
  return report;
}

}  // namespace sbp
