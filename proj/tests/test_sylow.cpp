#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "sbp/exact.hpp"
#include "sbp/mc.hpp"
#include "sbp/oracle.hpp"
#include "sbp/perm.hpp"
#include "sbp/rng.hpp"
#include "sbp/stats.hpp"
#include "sbp/sylow.hpp"

using namespace sbp;

namespace {

Permutation cyc(const char* text, std::size_t n) { return parse_cycles(text, n); }

ExponentVector ev(std::vector<std::uint32_t> e) { return ExponentVector{std::move(e)}; }

// Index of a permutation in the list, or -1.
long find_in(const std::vector<Permutation>& list, const Permutation& x) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] == x) return static_cast<long>(i);
  }
  return -1;
}

}  // namespace

TEST(Sylow, ContextRejectsInvalidParameters) {
  EXPECT_THROW(SylowContext(4, 1), std::invalid_argument);
  EXPECT_THROW(SylowContext(3, 0), std::invalid_argument);
  EXPECT_THROW(SylowContext(3, 3), std::invalid_argument);
  EXPECT_THROW(SylowContext(1, 1), std::invalid_argument);
  EXPECT_NO_THROW(SylowContext(23, 22));
}

TEST(Sylow, GeneratorsAndElements) {
  const SylowContext ctx(3, 2);
  EXPECT_EQ(ctx.generator(1), cyc("(1 2 3)", 6));
  EXPECT_EQ(ctx.generator(2), cyc("(4 5 6)", 6));
  const auto elements = ctx.elements();
  ASSERT_EQ(elements.size(), 9u);
  EXPECT_TRUE(elements.front().is_identity());
  EXPECT_EQ(elements[1], ctx.generator(2));
  EXPECT_EQ(elements[3], ctx.generator(1));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i + 1; j < elements.size(); ++j) EXPECT_NE(elements[i], elements[j]);
  }
}

TEST(Sylow, Membership) {
  const SylowContext c32(3, 2);
  EXPECT_EQ(h_membership(c32, identity(6)), ev({0, 0}));
  EXPECT_EQ(h_membership(c32, cyc("(1 2 3)", 6)), ev({1, 0}));
  EXPECT_EQ(h_membership(c32, cyc("(1 3 2)(4 5 6)", 6)), ev({2, 1}));
  EXPECT_FALSE(h_membership(c32, cyc("(1 2)", 6)).has_value());
  EXPECT_FALSE(h_membership(c32, cyc("(1 4)", 6)).has_value());
  const SylowContext c31(3, 1);
  EXPECT_FALSE(h_membership(c31, cyc("(1 2)", 3)).has_value());
  for (const auto& h : c32.elements()) {
    const auto v = h_membership(c32, h);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(c32.realize(*v), h);
  }
}

TEST(Sylow, WeightCountsNonzeroExponents) {
  EXPECT_EQ(weight_R(ev({0, 0, 0})), 0u);
  EXPECT_EQ(weight_R(ev({1, 0, 4})), 2u);
  EXPECT_EQ(weight_R(ev({2, 3, 1})), 3u);
}

TEST(Sylow, StabilizerAxesExamples) {
  EXPECT_EQ(stabilizer_axes(SylowContext(3, 2), identity(6)), (std::vector<unsigned>{1, 2}));
  EXPECT_EQ(stabilizer_axes(SylowContext(3, 1), cyc("(1 2)", 3)), (std::vector<unsigned>{1}));
  EXPECT_TRUE(stabilizer_axes(SylowContext(5, 1), cyc("(1 2)", 5)).empty());
  const SylowContext c53(5, 3);
  EXPECT_EQ(stabilizer_axes(c53, cyc("(1 2)", 15)), (std::vector<unsigned>{2, 3}));
  EXPECT_EQ(stabilizer_axes(c53, cyc("(1 6)", 15)), (std::vector<unsigned>{3}));
  EXPECT_TRUE(stabilizer_axes(c53, cyc("(1 6 11)", 15)).empty());
  // A block permutation keeps H invariant.
  EXPECT_EQ(stabilizer_axes(SylowContext(3, 2), cyc("(1 4)(2 5)(3 6)", 6)), (std::vector<unsigned>{1, 2}));
}

TEST(Sylow, CosetExponentExamples) {
  EXPECT_EQ(coset_exponent_T(SylowContext(3, 2), identity(6)), 2u);
  EXPECT_EQ(coset_exponent_T(SylowContext(3, 1), cyc("(1 2)", 3)), 1u);
  EXPECT_EQ(coset_exponent_T(SylowContext(5, 1), cyc("(1 2)", 5)), 2u);
  EXPECT_EQ(coset_exponent_T(SylowContext(5, 3), cyc("(1 6 11)", 15)), 6u);
}

// |H ∩ σ⁻¹Hσ| = p^|A|, counted directly.
TEST(Sylow, AxesMatchIntersectionOrder) {
  auto check = [](const SylowContext& ctx, const Permutation& sigma) {
    const auto elements = ctx.elements();
    std::size_t count = 0;
    for (const auto& h : elements) {
      if (h_membership(ctx, conjugate(sigma, h))) ++count;
    }
    const auto axes = stabilizer_axes(ctx, sigma);
    std::size_t expected = 1;
    for (std::size_t i = 0; i < axes.size(); ++i) expected *= ctx.p();
    EXPECT_EQ(count, expected) << to_cycle_string(sigma);
    EXPECT_EQ(coset_exponent_T(ctx, sigma), 2 * ctx.k() - axes.size());
  };
  const SylowContext c31(3, 1);
  for (const auto& s : all_permutations(3)) check(c31, s);
  const SylowContext c32(3, 2);
  Rng rng(61);
  for (int i = 0; i < 1000; ++i) check(c32, uniform_random(6, rng));
}

TEST(Sylow, FixedPointCountExamples) {
  EXPECT_EQ(fixed_point_count(SylowContext(3, 2), 0), factorial(6));
  EXPECT_EQ(fixed_point_count(SylowContext(3, 2), 1), 18);
  EXPECT_EQ(fixed_point_count(SylowContext(3, 1), 1), 3);
  EXPECT_EQ(fixed_point_count(SylowContext(3, 2), 2), 18);
  EXPECT_EQ(fixed_point_count(SylowContext(5, 2), 1), 600);
}

TEST(Sylow, FixedPointCountMatchesEnumeration) {
  const SylowContext ctx(3, 2);
  const auto elements = ctx.elements();
  for (const auto& h : elements) {
    for (const auto& g : elements) {
      const unsigned yh = weight_R(*h_membership(ctx, h));
      const unsigned yg = weight_R(*h_membership(ctx, g));
      if (yh != yg) continue;
      const auto fixed = enumerate_fixed_points(h, g, 1000);
      EXPECT_EQ(BigInt(static_cast<unsigned long>(fixed.size())), fixed_point_count(ctx, yh));
    }
  }
}

TEST(Sylow, StabilizerSampleAtTopCosetIsTrivial) {
  const SylowContext ctx(5, 1);
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    const auto s = sample_stabilizer(ctx, cyc("(1 2)", 5), rng);
    EXPECT_TRUE(s.h.is_identity());
    EXPECT_TRUE(s.g.is_identity());
  }
}

TEST(Sylow, StabilizerSamplesFixSigma) {
  const SylowContext ctx(5, 3);
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const auto sigma = uniform_random(15, rng);
    const auto s = sample_stabilizer(ctx, sigma, rng);
    EXPECT_EQ(compose(compose(inverse(s.h), sigma), s.g), sigma);
    EXPECT_EQ(ctx.realize(s.g_exponents), s.g);
    EXPECT_TRUE(h_membership(ctx, s.h).has_value());
  }
}

// Each draw is matched against the stabiliser found by scanning H×H.
TEST(Sylow, StabilizerSamplerIsUniform) {
  Rng rng(31337);
  auto check = [&](unsigned p, unsigned k, const Permutation& sigma) {
    const SylowContext ctx(p, k);
    const auto elements = ctx.elements();
    std::vector<std::pair<Permutation, Permutation>> support;
    for (const auto& h : elements) {
      for (const auto& g : elements) {
        if (compose(sigma, g) == compose(h, sigma)) support.emplace_back(h, g);
      }
    }
    std::vector<std::uint64_t> counts(support.size(), 0);
    const std::uint64_t draws = 50000;
    for (std::uint64_t i = 0; i < draws; ++i) {
      const auto s = sample_stabilizer(ctx, sigma, rng);
      std::size_t j = 0;
      while (j < support.size() && !(support[j].first == s.h && support[j].second == s.g)) ++j;
      ASSERT_LT(j, support.size());
      ++counts[j];
    }
    const auto chi = chi_square_gof(counts, std::vector<double>(support.size(), 1.0 / support.size()));
    EXPECT_TRUE(chi.passed()) << to_cycle_string(sigma) << " " << chi.summary();
  };
  check(3, 1, identity(3));
  check(3, 1, cyc("(1 2)", 3));
  check(3, 2, identity(6));
  check(3, 2, cyc("(1 2)", 6));
  check(3, 2, cyc("(1 4)(2 5)(3 6)", 6));
  check(3, 2, cyc("(1 4)", 6));
}

// R(g) ~ Binomial(|A|, 1 - 1/p).
TEST(Sylow, StabilizerWeightIsBinomial) {
  const SylowContext ctx(5, 3);
  Rng rng(4242);
  for (const char* text : {"()", "(1 2)", "(1 6)", "(1 6 11)"}) {
    const auto sigma = cyc(text, 15);
    const unsigned m = static_cast<unsigned>(stabilizer_axes(ctx, sigma).size());
    std::vector<std::uint64_t> counts(m + 1, 0);
    for (int i = 0; i < 40000; ++i) ++counts[weight_R(sample_stabilizer(ctx, sigma, rng).g_exponents)];
    const auto chi = chi_square_gof(counts, binomial_pmf(m, 0.8));
    EXPECT_TRUE(chi.passed()) << text << " " << chi.summary();
  }
}

TEST(Sylow, FixedPointSamplesSolveTheConjugacy) {
  const SylowContext ctx(5, 3);
  Rng rng(99);
  const auto elements = ctx.elements();
  for (int i = 0; i < 300; ++i) {
    const auto sigma = uniform_random(15, rng);
    const auto s = sample_stabilizer(ctx, sigma, rng);
    const auto tau = sample_fixed_points(ctx, s.h, s.g, rng);
    EXPECT_EQ(conjugate(tau, s.g), s.h);
  }
  for (int i = 0; i < 300; ++i) {
    const auto& g = elements[rng.below(elements.size())];
    // Any element of H with the same weight is a valid target.
    std::vector<Permutation> same;
    const unsigned y = weight_R(*h_membership(ctx, g));
    for (const auto& h : elements) {
      if (weight_R(*h_membership(ctx, h)) == y) same.push_back(h);
    }
    const auto& h = same[rng.below(same.size())];
    EXPECT_EQ(conjugate(sample_fixed_points(ctx, h, g, rng), g), h);
  }
}

TEST(Sylow, FixedPointSamplerRejectsMismatchedCycleTypes) {
  const SylowContext ctx(3, 2);
  Rng rng(1);
  EXPECT_THROW(sample_fixed_points(ctx, ctx.generator(1), identity(6), rng), std::invalid_argument);
  EXPECT_THROW(sample_fixed_points(ctx, cyc("(1 2)", 6), cyc("(1 2)", 6), rng), std::invalid_argument);
}

// h = g = η_1 at p = 5, k = 2: τ centralises η_1, so T(τ) = 2 exactly when its
// action on the second block normalises ⟨η_2⟩ (20 of 120 choices).
TEST(Sylow, CosetExponentLawOfFixedPoints) {
  const SylowContext ctx(5, 2);
  const auto& eta = ctx.generator(1);
  const auto support = enumerate_fixed_points(eta, eta, 1000);
  ASSERT_EQ(support.size(), 600u);
  std::map<unsigned, std::size_t> exact;
  for (const auto& tau : support) ++exact[coset_exponent_T(ctx, tau)];
  EXPECT_EQ(exact[2], 100u);
  EXPECT_EQ(exact[3], 500u);
  EXPECT_EQ(exact.size(), 2u);

  Rng rng(5150);
  std::vector<std::uint64_t> counts(2, 0);
  for (int i = 0; i < 30000; ++i) ++counts[coset_exponent_T(ctx, sample_fixed_points(ctx, eta, eta, rng)) - 2];
  EXPECT_TRUE(chi_square_gof(counts, {1.0 / 6, 5.0 / 6}).passed());

  // p = 3, k = 2: every τ commuting with η_1 lands in a coset of size p².
  const SylowContext small(3, 2);
  for (int i = 0; i < 500; ++i) {
    EXPECT_EQ(coset_exponent_T(small, sample_fixed_points(small, small.generator(1), small.generator(1), rng)), 2u);
  }
}

TEST(Sylow, BurnsideStepMatchesKernelRow) {
  const auto kernel = build_full_kernel(3, 1);
  const SylowContext ctx(3, 1);
  const std::size_t start = kernel.index_of(identity(3));
  const auto row = kernel.row(start);
  Rng rng(777);
  const std::uint64_t draws = 60000;
  std::vector<std::uint64_t> counts(kernel.size(), 0);
  for (std::uint64_t i = 0; i < draws; ++i) ++counts[kernel.index_of(burnside_step(ctx, identity(3), rng))];
  std::vector<double> probs;
  for (std::size_t j = 0; j < kernel.size(); ++j) {
    const double q = static_cast<double>(row[j]) / static_cast<double>(kernel.scale());
    probs.push_back(q);
    const double sd = std::sqrt(draws * q * (1 - q));
    EXPECT_LE(std::fabs(counts[j] - draws * q), 3 * sd + 1e-9) << j;
  }
  EXPECT_TRUE(chi_square_gof(counts, probs).passed());
}

TEST(Sylow, BurnsideStepMatchesKernelRowsAtThreeTwo) {
  const auto kernel = build_full_kernel(3, 2);
  const SylowContext ctx(3, 2);
  Rng rng(2468);
  for (const char* text : {"()", "(1 4)", "(1 2)(4 5)"}) {
    const auto sigma = cyc(text, 6);
    const auto row = kernel.row(kernel.index_of(sigma));
    std::vector<std::uint64_t> counts(kernel.size(), 0);
    for (int i = 0; i < 200000; ++i) ++counts[kernel.index_of(burnside_step(ctx, sigma, rng))];
    std::vector<double> probs;
    for (auto e : row) probs.push_back(static_cast<double>(e) / static_cast<double>(kernel.scale()));
    const auto chi = chi_square_gof(counts, probs);
    EXPECT_TRUE(chi.passed()) << text << " " << chi.summary();
  }
  EXPECT_EQ(find_in(kernel.census().states, identity(6)), 0);
}
