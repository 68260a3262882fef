#include "sbp/counts.hpp"

#include <stdexcept>
#include <string>

#include "sbp/sylow.hpp"

namespace sbp {

namespace {

void check_pk(unsigned p, unsigned k) {
  if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (k >= p) throw std::invalid_argument("k = " + std::to_string(k) + " must be below p = " + std::to_string(p));
}

std::string pka(unsigned p, unsigned k, unsigned a) {
  return "p=" + std::to_string(p) + " k=" + std::to_string(k) + " a=" + std::to_string(a);
}

}  // namespace

BigInt alternating_term(unsigned p, unsigned k, unsigned j, unsigned a, const FactorialTable& factorials) {
  const unsigned long pl = p;
  return factorials((k - j) * pl) * factorials(j) * ipow(binomial(k, j), 2) * ipow(BigInt(pl * (pl - 1)), j) *
         binomial(j, 2 * k - a);
}

BigInt count_f(unsigned p, unsigned k, unsigned a, const FactorialTable& factorials) {
  check_pk(p, k);
  if (a < k || a > 2 * k) throw std::invalid_argument("count_f: a must lie in [k:2k], got " + pka(p, k, a));
  BigInt sum = 0;
  for (unsigned j = 2 * k - a; j <= k; ++j) {
    const BigInt term = alternating_term(p, k, j, a, factorials);
    if ((j - (2 * k - a)) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  const BigInt divisor = ipow(BigInt(p), a);
  if (!mpz_divisible_p(sum.get_mpz_t(), divisor.get_mpz_t())) {
    throw std::logic_error("count_f: alternating sum not divisible by p^a at " + pka(p, k, a));
  }
  BigInt out;
  mpz_divexact(out.get_mpz_t(), sum.get_mpz_t(), divisor.get_mpz_t());
  if (out < 0) throw std::logic_error("count_f: negative count at " + pka(p, k, a));
  return out;
}

BigInt count_f(unsigned p, unsigned k, unsigned a) {
  check_pk(p, k);
  return count_f(p, k, a, FactorialTable(static_cast<unsigned long>(p) * k));
}

namespace {

CosetCountTable build_with(unsigned p, unsigned k, const FactorialTable& factorials) {
  CosetCountTable table{p, k, {}, 0};
  table.f.reserve(k + 1);
  for (unsigned a = k; a <= 2 * k; ++a) {
    table.f.push_back(count_f(p, k, a, factorials));
    table.Z += table.f.back();
  }
  BigInt total = 0;
  for (unsigned a = k; a <= 2 * k; ++a) total += ipow(BigInt(p), a) * table.count(a);
  if (total != factorials(static_cast<unsigned long>(p) * k)) {
    throw std::logic_error("build_table: partition identity fails for p=" + std::to_string(p) +
                           " k=" + std::to_string(k));
  }
  return table;
}

}  // namespace

CosetCountTable build_table(unsigned p, unsigned k) {
  check_pk(p, k);
  return build_with(p, k, FactorialTable(static_cast<unsigned long>(p) * k));
}

std::vector<CosetCountTable> build_tables_upto(unsigned p, unsigned k) {
  check_pk(p, k);
  const FactorialTable factorials(static_cast<unsigned long>(p) * k);
  std::vector<CosetCountTable> tables;
  tables.reserve(k + 1);
  for (unsigned kk = 0; kk <= k; ++kk) tables.push_back(build_with(p, kk, factorials));
  return tables;
}

void validate_table(const CosetCountTable& table) {
  check_pk(table.p, table.k);
  if (table.f.size() != table.k + 1) throw std::invalid_argument("count table must have k+1 rows");
  BigInt total = 0;
  BigInt z = 0;
  for (unsigned a = table.k; a <= 2 * table.k; ++a) {
    if (table.count(a) < 0) throw std::invalid_argument("count table has a negative entry");
    total += ipow(BigInt(table.p), a) * table.count(a);
    z += table.count(a);
  }
  if (total != factorial(static_cast<unsigned long>(table.p) * table.k)) {
    throw std::invalid_argument("count table violates the partition identity");
  }
  if (z != table.Z) throw std::invalid_argument("count table total Z does not match its entries");
}

ExactDistribution lumped_stationary(const CosetCountTable& table) {
  ExactDistribution pi{table.k, {}};
  pi.weights.reserve(table.f.size());
  for (const auto& f : table.f) {
    BigRational q(f, table.Z);
    q.canonicalize();
    pi.weights.push_back(std::move(q));
  }
  return pi;
}

VerificationReport verify_count_bounds(unsigned p, unsigned k) {
  check_pk(p, k);
  if (k < 1) throw std::invalid_argument("verify_count_bounds: k must be positive");
  VerificationReport report("count-bounds p=" + std::to_string(p) + " k=" + std::to_string(k));
  const unsigned long pl = p;
  const FactorialTable factorials(pl * k);
  const auto table = build_with(p, k, factorials);
  const BigInt& f_max = table.count(2 * k);
  const BigInt p_pow_2k = ipow(BigInt(pl), 2 * k);
  const BigInt& n_fact = factorials(pl * k);
  const BigInt fact_p_minus_2 = factorial(pl - 2);
  const BigInt fact_p_minus_1 = factorial(pl - 1);

  // (pk)!/p^{2k} (1 - 1/(p-2)!) <= f(2k;k) <= (pk)!/p^{2k}
  {
    const BigInt lhs = n_fact * (fact_p_minus_2 - 1);
    const BigInt rhs = f_max * p_pow_2k * fact_p_minus_2;
    report.record("max-coset-count-lower", lhs <= rhs, [&] {
      return "f(2k;k)=" + to_string(f_max) + " below (pk)!/p^2k (1-1/(p-2)!) at p=" + std::to_string(p) +
             " k=" + std::to_string(k);
    });
    report.record("max-coset-count-upper", f_max * p_pow_2k <= n_fact, [&] {
      return "f(2k;k)=" + to_string(f_max) + " exceeds (pk)!/p^2k at p=" + std::to_string(p) + " k=" + std::to_string(k);
    });
  }

  // f(a;k) <= Γ_{2k-a,a} / p^a, and Γ_{j+1,a} <= Γ_{j,a} for j ∈ [2k-a : k-1].
  for (unsigned a = k; a <= 2 * k; ++a) {
    const unsigned j0 = 2 * k - a;
    const BigInt lead = alternating_term(p, k, j0, a, factorials);
    const BigInt lhs = table.count(a) * ipow(BigInt(pl), a);
    report.record("alternating-sum-leading-term", lhs <= lead, [&] {
      return "f(a;k) p^a = " + to_string(lhs) + " > leading term " + to_string(lead) + " at " + pka(p, k, a);
    });
    BigInt previous = lead;
    for (unsigned j = j0; j < k; ++j) {
      BigInt next = alternating_term(p, k, j + 1, a, factorials);
      report.record("alternating-terms-nonincreasing", next <= previous, [&] {
        return "term j=" + std::to_string(j + 1) + " exceeds term j=" + std::to_string(j) + " at " + pka(p, k, a);
      });
      previous = std::move(next);
    }
  }

  const std::string hypothesis = "requires p >= 11";
  if (p < 11) {
    report.skip("small-coset-uniform-bound", hypothesis);
    report.skip("leading-term-bound-nondecreasing", hypothesis);
    report.skip("small-to-max-ratio", hypothesis);
    report.skip("max-coset-share", hypothesis);
    return report;
  }

  // f(a;k) <= ((k-1)p)! k² (p-1) / p^{2k-2} for k <= a < 2k, via the leading
  // terms Λ_a = Γ_{2k-a,a} / p^a being non-decreasing in a.
  const BigInt uniform_rhs = factorials((k - 1) * pl) * k * k * (pl - 1);
  for (unsigned a = k; a < 2 * k; ++a) {
    const BigInt lhs = table.count(a) * ipow(BigInt(pl), 2 * k - 2);
    report.record("small-coset-uniform-bound", lhs <= uniform_rhs,
                  [&] { return "f(a;k)=" + to_string(table.count(a)) + " exceeds the uniform bound at " + pka(p, k, a); });
    if (a + 1 < 2 * k) {
      // Λ_a <= Λ_{a+1}  <=>  Γ_{2k-a,a} p <= Γ_{2k-a-1,a+1}
      const BigInt here = alternating_term(p, k, 2 * k - a, a, factorials) * pl;
      const BigInt next = alternating_term(p, k, 2 * k - a - 1, a + 1, factorials);
      report.record("leading-term-bound-nondecreasing", here <= next,
                    [&] { return "Λ_a > Λ_{a+1} at " + pka(p, k, a); });
    }
    // f(a;k)/f(2k;k) <= 2p³/(p-1)!
    report.record("small-to-max-ratio", table.count(a) * fact_p_minus_1 <= 2 * pl * pl * pl * f_max, [&] {
      return "f(a;k)/f(2k;k) exceeds 2p^3/(p-1)! at " + pka(p, k, a);
    });
  }

  // Z (1 - 2p⁴/(p-1)!) <= f(2k;k) <= Z
  {
    const BigInt p4 = BigInt(pl) * pl * pl * pl;
    const bool lower = table.Z * (fact_p_minus_1 - 2 * p4) <= f_max * fact_p_minus_1;
    report.record("max-coset-share", lower && f_max <= table.Z, [&] {
      return "f(2k;k)=" + to_string(f_max) + " outside [Z(1-2p^4/(p-1)!), Z] with Z=" + to_string(table.Z);
    });
  }
  return report;
}

}  // namespace sbp
