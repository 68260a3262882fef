#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "sbp/perm.hpp"
#include "sbp/rng.hpp"
#include "sbp/stats.hpp"

using namespace sbp;

namespace {

Permutation cyc(const char* text, std::size_t n) { return parse_cycles(text, n); }

CycleType type_of(std::map<std::size_t, std::size_t> counts) { return CycleType{std::move(counts)}; }

}  // namespace

TEST(Perm, IdentityBasics) {
  EXPECT_EQ(to_one_line_string(identity(3)), "[1,2,3]");
  EXPECT_EQ(cycle_type(identity(4)), type_of({{1, 4}}));
  EXPECT_TRUE(identity(7).is_identity());
  Rng rng(11);
  const auto sigma = uniform_random(5, rng);
  EXPECT_EQ(compose(identity(5), sigma), sigma);
  EXPECT_EQ(compose(sigma, identity(5)), sigma);
}

TEST(Perm, ComposeConvention) {
  EXPECT_TRUE(compose(cyc("(1 2)", 2), cyc("(1 2)", 2)).is_identity());
  EXPECT_EQ(compose(cyc("(1 2 3)", 3), cyc("(1 2 3)", 3)), cyc("(1 3 2)", 3));
  // a ↦ σ(τ(a)): (1 2)∘(2 3) sends 2 -> 3 -> 3, 3 -> 2 -> 1.
  const auto p = compose(cyc("(1 2)", 3), cyc("(2 3)", 3));
  EXPECT_EQ(p.apply(2), 3u);
  EXPECT_EQ(p.apply(3), 1u);
  EXPECT_EQ(p, cyc("(1 2 3)", 3));
}

TEST(Perm, ComposeRejectsDegreeMismatch) {
  EXPECT_THROW(compose(identity(2), identity(3)), std::invalid_argument);
  EXPECT_THROW(conjugate(identity(2), identity(3)), std::invalid_argument);
}

TEST(Perm, Conjugate) {
  const auto g = cyc("(1 2 3)", 3);
  EXPECT_EQ(conjugate(identity(3), g), g);
  EXPECT_EQ(conjugate(cyc("(1 2)", 3), g), cyc("(1 3 2)", 3));
  EXPECT_EQ(to_cycle_string(conjugate(cyc("(1 2)", 3), g)), "(1 3 2)");
}

TEST(Perm, CycleTypes) {
  EXPECT_EQ(cycle_type(cyc("(1 2 3)", 6)), type_of({{3, 1}, {1, 3}}));
  EXPECT_EQ(cycle_type(identity(6)), type_of({{1, 6}}));
  EXPECT_EQ(cycle_type(cyc("(1 2)(3 4 5)", 5)), type_of({{2, 1}, {3, 1}}));
  EXPECT_EQ(cycle_type(cyc("(1 2)(3 4 5)", 5)).degree(), 5u);
}

TEST(Perm, GroupLawsExhaustiveS4) {
  const auto all = all_permutations(4);
  ASSERT_EQ(all.size(), 24u);
  for (const auto& s : all) {
    EXPECT_TRUE(compose(s, inverse(s)).is_identity());
    EXPECT_TRUE(compose(inverse(s), s).is_identity());
    for (const auto& t : all) {
      EXPECT_EQ(inverse(compose(s, t)), compose(inverse(t), inverse(s)));
      EXPECT_EQ(conjugate(s, t), compose(compose(s, t), inverse(s)));
    }
  }
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto a = uniform_random(4, rng), b = uniform_random(4, rng), c = uniform_random(4, rng);
    EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
  }
}

TEST(Perm, ConjugationPreservesCycleTypeExhaustiveUpTo5) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto all = all_permutations(n);
    for (const auto& s : all) {
      for (const auto& g : all) ASSERT_EQ(cycle_type(conjugate(s, g)), cycle_type(g));
    }
  }
}

TEST(Perm, ConjugationPreservesCycleTypeRandom6To8) {
  Rng rng(2024);
  for (std::size_t n = 6; n <= 8; ++n) {
    for (int i = 0; i < 2000; ++i) {
      const auto s = uniform_random(n, rng);
      const auto g = uniform_random(n, rng);
      ASSERT_EQ(cycle_type(conjugate(s, g)), cycle_type(g));
    }
  }
}

TEST(Perm, TextFormsRoundTrip) {
  const auto p = parse_cycles("(1 2 3)(4 5)", 5);
  EXPECT_EQ(to_one_line_string(p), "[2,3,1,5,4]");
  EXPECT_EQ(to_cycle_string(p), "(1 2 3)(4 5)");
  EXPECT_EQ(parse_one_line("[2,3,1,5,4]"), p);
  EXPECT_EQ(to_cycle_string(identity(4)), "()");
  EXPECT_EQ(parse_cycles("()", 4), identity(4));
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const auto s = uniform_random(9, rng);
    EXPECT_EQ(parse_cycles(to_cycle_string(s), 9), s);
    EXPECT_EQ(parse_one_line(to_one_line_string(s)), s);
  }
}

TEST(Perm, ParserRejectsMalformedInput) {
  EXPECT_THROW(parse_cycles("(1 2", 3), std::invalid_argument);
  EXPECT_THROW(parse_cycles("(1 4)", 3), std::invalid_argument);
  EXPECT_THROW(parse_cycles("(1 2)(2 3)", 3), std::invalid_argument);
  EXPECT_THROW(parse_cycles("1 2", 3), std::invalid_argument);
  EXPECT_THROW(parse_one_line("[1,1,2]"), std::invalid_argument);
  EXPECT_THROW(parse_one_line("[0,1]"), std::invalid_argument);
  EXPECT_THROW(parse_one_line("1,2"), std::invalid_argument);
  EXPECT_THROW(Permutation::from_images({0, 2}), std::invalid_argument);
  EXPECT_THROW(identity(0), std::invalid_argument);
  EXPECT_THROW(identity(kMaxDegree + 1), std::invalid_argument);
}

TEST(Perm, LexicographicRankMatchesEnumeration) {
  const auto all = all_permutations(5);
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(lexicographic_rank(all[i]), i);
  for (std::size_t i = 1; i < all.size(); ++i) EXPECT_LT(all[i - 1], all[i]);
}

TEST(Perm, UniformRandomDegreeOne) {
  Rng rng(1);
  EXPECT_TRUE(uniform_random(1, rng).is_identity());
}

TEST(Perm, UniformRandomIsReproducible) {
  Rng a(77), b(77);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(uniform_random(12, a), uniform_random(12, b));
}

TEST(Perm, UniformRandomS3WithinThreeSigma) {
  Rng rng(2718);
  const std::uint64_t draws = 60000;
  std::vector<std::uint64_t> counts(6, 0);
  for (std::uint64_t i = 0; i < draws; ++i) ++counts[lexicographic_rank(uniform_random(3, rng))];
  const double expected = draws / 6.0;
  const double sd = std::sqrt(draws * (1.0 / 6) * (5.0 / 6));
  for (auto c : counts) EXPECT_LT(std::fabs(c - expected), 3 * sd);
  EXPECT_TRUE(chi_square_gof(counts, std::vector<double>(6, 1.0 / 6)).passed());
}

TEST(Rng, BelowIsInRangeAndSeedsDiffer) {
  Rng rng(9);
  for (std::uint64_t bound : {1ull, 2ull, 3ull, 7ull, 1000ull, (1ull << 63) + 5}) {
    for (int i = 0; i < 100; ++i) EXPECT_LT(rng.below(bound), bound);
  }
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(5, 9), derive_seed(5, 9));
}
