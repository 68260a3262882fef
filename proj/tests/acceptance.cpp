// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sbp/counts.hpp"
#include "sbp/exact.hpp"
#include "sbp/lumped.hpp"
#include "sbp/mc.hpp"
#include "sbp/oracle.hpp"
#include "sbp/perm.hpp"
#include "sbp/rng.hpp"
#include "sbp/sylow.hpp"

using namespace sbp;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      detail << "    failed: " << what << "\n";
    }
  }
  void require(const VerificationReport& report) {
    require(report.passed(), report.name());
    if (!report.passed()) detail << report.summary();
  }
  void require_families(const VerificationReport& report, const std::vector<std::string>& names) {
    for (const auto& name : names) {
      if (!report.has_family(name)) {
        require(false, report.name() + ": family " + name + " missing");
        continue;
      }
      const auto& family = report.family(name);
      require(!family.skipped && family.checked > 0, report.name() + ": family " + name + " not exercised");
      require(family.passed(), report.name() + ": family " + name + " has " + std::to_string(family.failed) + " failures");
      for (const auto& w : family.witnesses) detail << "      " << w << "\n";
    }
  }
};

struct Criterion {
  std::string id;
  std::string title;
  double time_limit_seconds;  // 0: none
  std::function<void(Outcome&)> body;
};

const std::vector<std::pair<unsigned, unsigned>> kOracleInstances = {{3, 1}, {5, 1}, {3, 2}};

std::vector<std::pair<unsigned, unsigned>> lumped_grid() {
  std::vector<std::pair<unsigned, unsigned>> grid;
  for (unsigned p : {11u, 13u}) {
    for (unsigned k : {1u, (p + 1) / 2, p - 1}) grid.emplace_back(p, k);
  }
  return grid;
}

void exact_lumping(Outcome& out) {
  for (auto [p, k] : kOracleInstances) {
    const auto kernel = build_full_kernel(p, k);
    out.require(verify_full_kernel(kernel));
    out.require_families(verify_lumping(kernel), {"lumped-rows-agree", "lumped-rows-match-formula"});
  }
}

void count_formula(Outcome& out) {
  for (auto [p, k] : kOracleInstances) {
    out.require(census_double_cosets(p, k).f == build_table(p, k).f,
                "census equals count formula at p=" + std::to_string(p) + " k=" + std::to_string(k));
  }
  std::size_t instances = 0;
  for (unsigned p = 2; p <= 23; ++p) {
    if (!is_prime(p)) continue;
    const FactorialTable factorials(p * (p - 1));
    for (unsigned k = 1; k < p; ++k) {
      BigInt total = 0;
      for (unsigned a = k; a <= 2 * k; ++a) total += ipow(BigInt(p), a) * count_f(p, k, a, factorials);
      out.require(total == factorials(p * k), "partition identity at p=" + std::to_string(p) + " k=" + std::to_string(k));
      ++instances;
    }
  }
  out.detail << "    partition identity checked on " << instances << " instances\n";
}

void one_block_closed_forms(Outcome& out) {
  for (unsigned p : {5u, 7u}) {
    const auto kernel = build_full_kernel(p, 1);
    out.require(verify_k1_kernel(kernel));
    out.require(verify_k1_spectrum(kernel, 10));
    out.require(verify_k1_tv(kernel, 10));
  }
  out.require(k1_exact_tv(5, StartClass::size_p, 1) == BigRational(41, 60), "p=5 size-p start t=1 gives 41/60");
}

void lumped_chain_bounds(Outcome& out) {
  for (auto [p, k] : lumped_grid()) {
    const auto report = verify_lumped_bounds(p, k, 200);
    out.require_families(report, {"lumped-vs-q-tv", "stationary-near-top-state", "q-hitting-closed-form"});
    const auto table = build_table(p, k);
    out.require(check_stationarity(build_lumped(p, k, table), table));
  }
}

void lumped_envelope(Outcome& out) {
  for (auto [p, k] : lumped_grid()) {
    out.require_families(verify_lumped_bounds(p, k, 200), {"lumped-envelope"});
  }
}

void oracle_sandwich(Outcome& out) {
  for (auto [p, k] : {std::pair{5u, 1u}, {3u, 2u}}) {
    const auto kernel = build_full_kernel(p, k);
    out.require(verify_conditional_uniformity(kernel, 10));
    out.require(verify_tv_sandwich(kernel, 10));
  }
}

// Largest |tv_hat(t) - center(t)| over t ∈ [1:t_max], from the identity.
double simulated_gap(const EmpiricalCurve& curve, unsigned p, unsigned k, Outcome& out, double tolerance) {
  double worst = 0;
  for (unsigned t = 1; t <= curve.t_max; ++t) {
    const double center = envelope_center_exact(p, k, k, t).get_d();
    const double gap = std::fabs(curve.tv_hat[t - 1] - center);
    worst = std::max(worst, gap);
    if (gap > tolerance) {
      out.require(false, "p=" + std::to_string(p) + " t=" + std::to_string(t) + ": tv_hat " +
                             std::to_string(curve.tv_hat[t - 1]) + " vs center " + std::to_string(center));
    }
  }
  return worst;
}

void simulation_band(Outcome& out) {
  const unsigned p = 11, k = 10;
  const auto curve = run_simulation({p, k, 10000, 60, std::nullopt, 20240611, 0});
  const double worst = simulated_gap(curve, p, k, out, 0.03);
  double combined = 0;
  for (unsigned t = 1; t <= 60; ++t) {
    combined = std::max(combined, 3 * curve.std_error[t - 1] + lumped_radius_exact(p, t).get_d());
  }
  out.detail << "    p=11 k=10: max |tv_hat - center| = " << worst << " (3 SE + lumped radius at most " << combined << ")\n";
}

// t = ⌊p log(k) + c p⌋ is where the cutoff profile at c applies.
void simulation_band_large(Outcome& out) {
  const unsigned p = 23, k = 22;
  const auto curve = run_simulation({p, k, 10000, 100, std::nullopt, 20240612, 0});
  const double worst = simulated_gap(curve, p, k, out, 0.03);
  out.detail << "    p=23 k=22: max |tv_hat - center| = " << worst << "\n";
  for (int c : {-1, 0, 1}) {
    const auto t = static_cast<unsigned>(std::floor(p * std::log(static_cast<double>(k)) + c * static_cast<double>(p)));
    const double profile = limit_profile(ProfileRegime::cutoff, k, c);
    const double gap = std::fabs(profile - curve.tv_hat[t - 1]);
    out.detail << "    c=" << c << " t=" << t << ": profile " << profile << " tv_hat " << curve.tv_hat[t - 1] << "\n";
    out.require(gap <= 0.06, "cutoff profile at c=" + std::to_string(c));
  }
}

void count_bounds(Outcome& out) {
  for (unsigned p : {11u, 13u}) {
    for (unsigned k = 1; k < p; ++k) {
      const auto report = verify_count_bounds(p, k);
      out.require(report);
      for (const auto& [name, family] : report.families()) {
        out.require(!family.skipped, report.name() + ": " + name + " skipped");
      }
    }
  }
}

void sampler_tests(Outcome& out) {
  Rng rng(90210);
  auto check = [&](const SamplerTest& test) {
    out.require(test.passed(), test.name + " " + test.chi.summary());
    out.detail << "    " << test.name << ": support " << test.support << ", p-value " << test.chi.p_value << "\n";
  };
  check(test_R_binomial(5, 3, identity(15), 50000, rng));
  check(test_R_binomial(11, 2, identity(22), 50000, rng));
  check(test_R_binomial(5, 1, parse_cycles("(1 2)", 5), 1000, rng));
  const SylowContext c31(3, 1);
  const SylowContext c32(3, 2);
  check(test_fixed_point_uniformity(3, 1, c31.generator(1), c31.generator(1), 30000, rng));
  check(test_fixed_point_uniformity(3, 2, c32.generator(1), c32.generator(1), 30000, rng));
  check(test_fixed_point_uniformity(3, 1, identity(3), identity(3), 30000, rng));
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1", "exact lumping of the full kernel", 30, exact_lumping},
      {"2", "coset count formula vs census and partition identity", 60, count_formula},
      {"3", "k = 1 kernel entries, spectrum and exact distance", 120, one_block_closed_forms},
      {"4", "lumped chain bounds at p in {11, 13}", 300, lumped_chain_bounds},
      {"5", "lumped envelope at p in {11, 13}", 300, lumped_envelope},
      {"6", "conditional uniformity and distance sandwich on oracle instances", 0, oracle_sandwich},
      {"7", "simulated distance band, p = 11, k = 10", 0, simulation_band},
      {"7b", "simulated distance band and cutoff profile, p = 23, k = 22 (optional panel)", 600, simulation_band_large},
      {"8", "coset count inequalities at p in {11, 13}", 120, count_bounds},
      {"9", "sampler goodness-of-fit", 0, sampler_tests},
  };

  bool all_ok = true;
  for (const auto& criterion : criteria) {
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.body(outcome);
    } catch (const std::exception& e) {
      outcome.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criterion.time_limit_seconds > 0) {
      outcome.require(seconds < criterion.time_limit_seconds, "runtime limit " + std::to_string(criterion.time_limit_seconds) + " s");
    }
    all_ok = all_ok && outcome.ok;
    std::printf("[%s] criterion %s: %s (%.2f s)\n", outcome.ok ? "PASS" : "FAIL", criterion.id.c_str(), criterion.title.c_str(),
                seconds);
    std::cout << outcome.detail.str() << std::flush;
  }
  std::printf("%s\n", all_ok ? "ALL PASS" : "SOME CRITERIA FAILED");
  return all_ok ? 0 : 1;
}
