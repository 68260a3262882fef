#include <gtest/gtest.h>

#include "sbp/counts.hpp"
#include "sbp/exact.hpp"
#include "sbp/lumped.hpp"
#include "sbp/oracle.hpp"
#include "sbp/sylow.hpp"

using namespace sbp;

namespace {

void expect_passed(const VerificationReport& report) {
  EXPECT_TRUE(report.passed()) << report.summary();
  EXPECT_GT(report.total_checked(), 0u) << report.name();
}

}  // namespace

TEST(Oracle, CensusMatchesCountFormula) {
  for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {5u, 1u}, {7u, 1u}, {3u, 2u}}) {
    const auto census = census_double_cosets(p, k);
    EXPECT_EQ(census.f, build_table(p, k).f) << p << " " << k;
  }
  const auto c31 = census_double_cosets(3, 1);
  EXPECT_EQ(c31.count(1), 2);
  EXPECT_EQ(c31.count(2), 0);
  const auto c51 = census_double_cosets(5, 1);
  EXPECT_EQ(c51.count(1), 4);
  EXPECT_EQ(c51.count(2), 4);
}

TEST(Oracle, CensusPartitionsTheGroup) {
  const auto census = enumerate_double_cosets(3, 2);
  ASSERT_EQ(census.size(), 720u);
  EXPECT_EQ(census.coset_count(), 16u);
  std::vector<std::uint32_t> sizes(census.coset_count(), 0);
  for (std::size_t i = 0; i < census.size(); ++i) ++sizes[census.coset_of[i]];
  EXPECT_EQ(sizes, census.coset_size);
  const SylowContext ctx(3, 2);
  for (std::size_t i = 0; i < census.size(); ++i) {
    EXPECT_EQ(census.exponent[i], coset_exponent_T(ctx, census.states[i]));
  }
  for (std::size_t c = 0; c < census.coset_count(); ++c) {
    EXPECT_EQ(census.coset_of[census.representative[c]], c);
  }
}

TEST(Oracle, RejectsLargeInstances) {
  EXPECT_THROW(build_full_kernel(5, 2), InstanceTooLarge);
  EXPECT_THROW(census_double_cosets(7, 2), InstanceTooLarge);
  EXPECT_THROW(build_full_kernel(4, 1), std::invalid_argument);
}

TEST(Oracle, FullKernelThreeOne) { expect_passed(verify_full_kernel(build_full_kernel(3, 1))); }
TEST(Oracle, FullKernelFiveOne) { expect_passed(verify_full_kernel(build_full_kernel(5, 1))); }
TEST(Oracle, FullKernelThreeTwo) { expect_passed(verify_full_kernel(build_full_kernel(3, 2))); }
TEST(Oracle, FullKernelSevenOne) { expect_passed(verify_full_kernel(build_full_kernel(7, 1))); }

TEST(Oracle, KernelRowsAreStochastic) {
  const auto kernel = build_full_kernel(3, 2);
  for (std::size_t i = 0; i < kernel.size(); i += 37) {
    const auto row = kernel.row(i);
    std::int64_t total = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      total += row[j];
      EXPECT_EQ(row[j], kernel.entry(i, j));
    }
    EXPECT_EQ(total, kernel.scale());
  }
  BigRational first(kernel.entry(0, 0), kernel.scale());
  first.canonicalize();
  EXPECT_EQ(kernel.probability(0, 0), first);
}

TEST(Oracle, StationaryLawOnCosets) {
  const auto kernel = build_full_kernel(5, 1);
  const auto pi = kernel.stationary().reduced();
  const auto table = build_table(5, 1);
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    const BigRational expected = BigRational(1) / (BigRational(table.Z) * BigRational(ipow(BigInt(5), kernel.exponent(i))));
    EXPECT_EQ(pi[i], expected);
  }
  const auto lumped = kernel.lump(kernel.stationary()).reduced();
  const auto pibar = lumped_stationary(table);
  EXPECT_EQ(lumped[0], pibar[1]);
  EXPECT_EQ(lumped[1], pibar[2]);
}

TEST(Oracle, LumpingThreeOne) { expect_passed(verify_lumping(build_full_kernel(3, 1))); }
TEST(Oracle, LumpingFiveOne) { expect_passed(verify_lumping(build_full_kernel(5, 1))); }
TEST(Oracle, LumpingThreeTwo) { expect_passed(verify_lumping(build_full_kernel(3, 2))); }
TEST(Oracle, LumpingSevenOne) { expect_passed(verify_lumping(build_full_kernel(7, 1))); }

TEST(Oracle, ConditionalUniformityOnTopCosets) {
  expect_passed(verify_conditional_uniformity(build_full_kernel(5, 1), 8));
  expect_passed(verify_conditional_uniformity(build_full_kernel(3, 2), 10));
}

// At p = 3, k = 1 there are no cosets of size p², so the check is vacuous.
TEST(Oracle, ConditionalUniformitySkippedWithoutTopCosets) {
  const auto report = verify_conditional_uniformity(build_full_kernel(3, 1), 5);
  EXPECT_TRUE(report.passed());
  std::size_t skipped = 0;
  for (const auto& [name, family] : report.families()) skipped += family.skipped ? 1 : 0;
  EXPECT_GT(skipped, 0u);
}

TEST(Oracle, LumpedDistanceIsBelowFullDistance) {
  expect_passed(verify_tv_sandwich(build_full_kernel(5, 1), 10));
  expect_passed(verify_tv_sandwich(build_full_kernel(3, 2), 10));
  expect_passed(verify_tv_sandwich(build_full_kernel(7, 1), 6));
}

TEST(Oracle, OneBlockKernelEntries) {
  expect_passed(verify_k1_kernel(build_full_kernel(5, 1)));
  expect_passed(verify_k1_kernel(build_full_kernel(7, 1)));
  EXPECT_THROW(verify_k1_kernel(build_full_kernel(3, 2)), std::invalid_argument);
}

TEST(Oracle, OneBlockSpectrum) {
  expect_passed(verify_k1_spectrum(5));
  expect_passed(verify_k1_spectrum(build_full_kernel(7, 1), 8));
  const auto s = k1_spectrum(7);
  EXPECT_EQ(s.n1, 6u);
  EXPECT_EQ(s.n2, 102u);
  EXPECT_EQ(s.eigenvalues[0], 1);
  EXPECT_EQ(s.eigenvalues[1], BigRational(6, 7));
  EXPECT_EQ(s.eigenvalues[2], BigRational(6, 7) - BigRational(1, 140));
}

TEST(Oracle, OneBlockDistanceMatchesKernelPowers) {
  expect_passed(verify_k1_tv(build_full_kernel(5, 1), 12));
  expect_passed(verify_k1_tv(build_full_kernel(7, 1), 6));
}

TEST(Oracle, OneBlockDistanceExamples) {
  EXPECT_EQ(k1_exact_tv(5, StartClass::size_p, 1), BigRational(41, 60));
  EXPECT_EQ(k1_exact_tv(5, StartClass::size_p2, 1), BigRational(1, 3));
}

// Direct computation from the full kernel, independent of the closed form.
TEST(Oracle, OneBlockDistanceFromPowers) {
  const auto kernel = build_full_kernel(5, 1);
  const auto pi = kernel.stationary();
  for (std::uint32_t a : {1u, 2u}) {
    std::size_t start = 0;
    while (kernel.exponent(start) != a) ++start;
    auto v = kernel.point_mass(start);
    for (unsigned t = 1; t <= 6; ++t) {
      v = kernel.apply_left(v);
      v.normalize();
      const auto expected = k1_exact_tv(5, a == 1 ? StartClass::size_p : StartClass::size_p2, t);
      EXPECT_EQ(tv_distance(v, pi).reduced(), expected) << a << " " << t;
    }
  }
}

TEST(Oracle, OneBlockDistanceDecays) {
  for (unsigned p : {5u, 7u, 11u, 23u}) {
    for (auto start : {StartClass::size_p, StartClass::size_p2}) {
      BigRational previous = 1;
      for (unsigned t = 1; t <= 200; ++t) {
        const auto tv = k1_exact_tv(p, start, t);
        EXPECT_GE(tv, 0);
        EXPECT_LE(tv, previous) << p << " " << t;
        previous = tv;
      }
      if (p <= 11) EXPECT_LT(previous.get_d(), 1e-6);
    }
  }
}
