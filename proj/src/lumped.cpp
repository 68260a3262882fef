#include "sbp/lumped.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sbp/sylow.hpp"

namespace sbp {

namespace {

void check_pk(unsigned p, unsigned k) {
  if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (k < 1 || k >= p) throw std::invalid_argument("need 1 <= k < p, got k = " + std::to_string(k));
}

void check_rows(const LumpedKernel& kernel, const char* what) {
  for (std::size_t r = 0; r < kernel.size(); ++r) {
    BigRational sum = 0;
    for (const auto& q : kernel.entries[r]) {
      if (q < 0) throw std::logic_error(std::string(what) + ": negative entry in row " + std::to_string(r + kernel.k));
      sum += q;
    }
    if (sum != 1) {
      throw std::logic_error(std::string(what) + ": row " + std::to_string(r + kernel.k) + " sums to " + to_string(sum));
    }
  }
}

void check_start(const LumpedKernel& kernel, unsigned start) {
  if (start < kernel.first() || start > kernel.last()) {
    throw std::invalid_argument("start state " + std::to_string(start) + " outside [k:2k]");
  }
}

std::string at(unsigned a, unsigned t) { return "a=" + std::to_string(a) + " t=" + std::to_string(t); }

}  // namespace

LumpedKernel build_lumped(unsigned p, unsigned k, const CosetCountTable& table) {
  check_pk(p, k);
  if (table.p != p || table.k != k) throw std::invalid_argument("build_lumped: table is for a different (p, k)");
  auto tables = build_tables_upto(p, k - 1);
  tables.push_back(table);
  const unsigned long pl = p;
  const FactorialTable factorials(pl * k);
  const BigRational keep(pl - 1, pl);  // (p-1)/p

  LumpedKernel kernel{p, k, KernelKind::burnside_lumped, {}};
  kernel.entries.assign(k + 1, std::vector<BigRational>(k + 1, BigRational(0)));
  for (unsigned a = k; a <= 2 * k; ++a) {
    for (unsigned b = k; b <= 2 * k; ++b) {
      BigRational entry = 0;
      const unsigned y_max = 2 * k - std::max(a, b);
      for (unsigned y = 0; y <= y_max; ++y) {
        const unsigned sub_k = k - y;
        BigRational term(binomial(2 * k - a, y) * tables[sub_k].count(b - y), factorials(pl * sub_k));
        term.canonicalize();
        term *= rpow(keep, y);
        term *= rpow(BigRational(pl), static_cast<long>(a) + static_cast<long>(b) - 2 * static_cast<long>(k));
        entry += term;
      }
      kernel.entries[a - k][b - k] = std::move(entry);
    }
  }
  check_rows(kernel, "build_lumped");
  return kernel;
}

LumpedKernel build_lumped(unsigned p, unsigned k) {
  check_pk(p, k);
  return build_lumped(p, k, build_table(p, k));
}

LumpedKernel build_q(unsigned p, unsigned k) {
  check_pk(p, k);
  const BigRational keep(p - 1, p);
  const BigRational move(1, p);
  LumpedKernel kernel{p, k, KernelKind::coupon_q, {}};
  kernel.entries.assign(k + 1, std::vector<BigRational>(k + 1, BigRational(0)));
  for (unsigned a = k; a <= 2 * k; ++a) {
    for (unsigned b = a; b <= 2 * k; ++b) {
      kernel.entries[a - k][b - k] =
          BigRational(binomial(2 * k - a, 2 * k - b)) * rpow(keep, 2 * k - b) * rpow(move, b - a);
    }
  }
  check_rows(kernel, "build_q");
  return kernel;
}

PowerMode default_mode(unsigned t) { return t <= 64 ? PowerMode::exact : PowerMode::floating; }

ExactEvolution::ExactEvolution(const LumpedKernel& kernel, unsigned start)
    : matrix_(ScaledMatrix::from_rationals(kernel.entries)), first_(kernel.first()) {
  check_start(kernel, start);
  state_.num.assign(kernel.size(), BigInt(0));
  state_.num[start - first_] = 1;
  state_.den = 1;
}

void ExactEvolution::step() {
  state_ = left_multiply(state_, matrix_);
  ++t_;
}

ExactDistribution ExactEvolution::distribution() const { return {first_, state_.reduced()}; }

FloatEvolution::FloatEvolution(const LumpedKernel& kernel, unsigned start) : n_(kernel.size()) {
  check_start(kernel, start);
  matrix_.reserve(n_ * n_);
  for (const auto& row : kernel.entries) {
    for (const auto& q : row) matrix_.push_back(q.get_d());
  }
  state_ = FloatDistribution::point_mass(kernel.first(), n_, start);
}

void FloatEvolution::step() {
  std::vector<double> next(n_, 0.0);
  for (std::size_t r = 0; r < n_; ++r) {
    const double w = state_.weights[r];
    if (w == 0.0) continue;
    for (std::size_t c = 0; c < n_; ++c) next[c] += w * matrix_[r * n_ + c];
  }
  state_.weights = std::move(next);
  ++t_;
}

ExactDistribution step_power_exact(const LumpedKernel& kernel, unsigned start, unsigned t) {
  ExactEvolution evolution(kernel, start);
  while (evolution.time() < t) evolution.step();
  return evolution.distribution();
}

FloatDistribution step_power_float(const LumpedKernel& kernel, unsigned start, unsigned t) {
  FloatEvolution evolution(kernel, start);
  while (evolution.time() < t) evolution.step();
  return evolution.current();
}

std::variant<ExactDistribution, FloatDistribution> step_power(const LumpedKernel& kernel, unsigned start, unsigned t,
                                                              PowerMode mode) {
  if (mode == PowerMode::exact) return step_power_exact(kernel, start, t);
  return step_power_float(kernel, start, t);
}

BigRational envelope_center_exact(unsigned p, unsigned k, unsigned a, unsigned t) {
  if (a < k || a > 2 * k) throw std::invalid_argument("envelope center: a outside [k:2k]");
  // 1 - ((p^t - (p-1)^t) / p^t)^{2k-a}
  const BigInt pt = ipow(BigInt(p), t);
  const BigRational hit(pt - ipow(BigInt(p - 1), t), pt);
  return 1 - rpow(hit, 2 * k - a);
}

namespace {

BigRational ratio(const BigInt& num, const BigInt& den) {
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

BigRational envelope_radius_exact(unsigned p, unsigned t) {
  const BigInt p4 = ipow(BigInt(p), 4);
  return ratio(4 * p4, factorial(p - 1)) + ratio(BigInt(t), factorial(p - 2));
}

BigRational lumped_radius_exact(unsigned p, unsigned t) {
  const BigInt p4 = ipow(BigInt(p), 4);
  return ratio(BigInt(t), factorial(p - 2)) + ratio(2 * p4, factorial(p - 1));
}

Envelope cutoff_envelope(unsigned p, unsigned k, unsigned a, unsigned t) {
  if (p < 11) throw std::invalid_argument("cutoff_envelope: the bound is stated for p >= 11, got p = " + std::to_string(p));
  check_pk(p, k);
  if (a < k || a > 2 * k) throw std::invalid_argument("cutoff_envelope: a outside [k:2k]");
  if (t < 1) throw std::invalid_argument("cutoff_envelope: t must be at least 1");
  const double stay = std::pow(1.0 - 1.0 / p, static_cast<double>(t));
  const double center = 1.0 - std::pow(1.0 - stay, static_cast<double>(2 * k - a));
  return {center, envelope_radius_exact(p, t).get_d()};
}

double limit_profile(ProfileRegime regime, unsigned k, double c) {
  if (regime == ProfileRegime::fixed_k) {
    if (c < 0) throw std::invalid_argument("limit_profile: fixed-k regime needs c >= 0");
    return 1.0 - std::pow(1.0 - std::exp(-c), static_cast<double>(k));
  }
  return 1.0 - std::exp(-std::exp(-c));
}

namespace {

ScaledVector scaled_stationary(const CosetCountTable& table) {
  ScaledVector v;
  v.num = table.f;
  v.den = table.Z;
  return v;
}

void check_geometric_sandwich(unsigned p, unsigned k, VerificationReport& report) {
  const long double pl = p;
  const long double shift = pl * std::log(static_cast<long double>(k));
  for (int step = -8; step <= 12; ++step) {
    const long double c = step * 0.25L;
    const long double x = shift + pl * c;
    if (x < 0) continue;
    const long double middle = 1.0L - std::pow(1.0L - 1.0L / pl, std::floor(x));
    const long double lower = 1.0L - std::exp(-(x - 1.0L) / pl);
    const long double upper = 1.0L - std::exp(-x * (1.0L / pl + 1.0L / (pl * pl)));
    report.record("geometric-tail-sandwich", lower <= middle && middle <= upper, [&] {
      std::ostringstream os;
      os.precision(17);
      os << "c=" << static_cast<double>(c) << " x=" << static_cast<double>(x) << ": " << static_cast<double>(lower)
         << " <= " << static_cast<double>(middle) << " <= " << static_cast<double>(upper) << " fails";
      return os.str();
    });
  }
}

}  // namespace

VerificationReport verify_lumped_bounds(unsigned p, unsigned k, unsigned t_max) {
  check_pk(p, k);
  VerificationReport report("lumped-chain p=" + std::to_string(p) + " k=" + std::to_string(k) +
                            " t_max=" + std::to_string(t_max));
  const auto table = build_table(p, k);
  const auto lumped = build_lumped(p, k, table);
  const auto q = build_q(p, k);
  const ScaledVector pi = scaled_stationary(table);
  const bool large_p = p >= 11;
  const BigInt p4 = ipow(BigInt(p), 4);
  const Fraction pi_slack(2 * p4, factorial(p - 1));
  const BigInt fact_p_minus_2 = factorial(p - 2);

  if (large_p) {
    // tv(π̄, δ_2k) = 1 - π̄(2k)
    const Fraction gap(table.Z - table.count(2 * k), table.Z);
    report.record("stationary-near-top-state", compare(gap, pi_slack) <= 0, [&] {
      return "1 - pi_bar(2k) = " + to_string(gap.reduced()) + " exceeds 2p^4/(p-1)!";
    });
  } else {
    report.skip("stationary-near-top-state", "requires p >= 11");
    report.skip("lumped-envelope", "requires p >= 11");
  }

  for (unsigned a = k; a <= 2 * k; ++a) {
    ExactEvolution chain(lumped, a);
    ExactEvolution coupon(q, a);
    const unsigned gap = 2 * k - a;
    for (unsigned t = 0; t <= t_max; ++t) {
      if (t > 0) {
        chain.step();
        coupon.step();
      }
      // Q^t_a(2k) against the closed form; 0⁰ = 1 at t = 0, a = 2k.
      const BigInt pt = ipow(BigInt(p), t);
      const Fraction closed(ipow(pt - ipow(BigInt(p - 1), t), gap), ipow(pt, gap));
      const Fraction top = coupon.current().at(coupon.current().size() - 1);
      report.record("q-hitting-closed-form", compare(top, closed) == 0, [&] {
        return "Q^t_a(2k) = " + to_string(top.reduced()) + " vs closed form " + to_string(closed.reduced()) + " at " +
               at(a, t);
      });
      if (t == 0) continue;

      const Fraction tv_q = tv_distance(chain.current(), coupon.current());
      const Fraction bound(BigInt(t), fact_p_minus_2);
      report.record("lumped-vs-q-tv", compare(tv_q, bound) <= 0, [&] {
        return "tv(P^t_a, Q^t_a) = " + std::to_string(tv_q.to_double()) + " exceeds t/(p-2)! at " + at(a, t);
      });

      if (large_p) {
        const Fraction tv_pi = tv_distance(chain.current(), pi);
        const Fraction center(envelope_center_exact(p, k, a, t));
        const Fraction radius = bound + pi_slack;
        const Fraction deviation = abs(tv_pi - center);
        report.record("lumped-envelope", compare(deviation, radius) <= 0, [&] {
          return "|tv - center| = " + std::to_string(deviation.to_double()) + " exceeds " +
                 std::to_string(radius.to_double()) + " at " + at(a, t);
        });
      }
    }
  }

  check_geometric_sandwich(p, k, report);
  return report;
}

VerificationReport check_stationarity(const LumpedKernel& kernel, const CosetCountTable& table) {
  VerificationReport report("stationarity p=" + std::to_string(kernel.p) + " k=" + std::to_string(kernel.k));
  const auto pi = lumped_stationary(table);
  for (unsigned b = kernel.first(); b <= kernel.last(); ++b) {
    BigRational mass = 0;
    for (unsigned a = kernel.first(); a <= kernel.last(); ++a) mass += pi[a] * kernel(a, b);
    report.record("stationarity", mass == pi[b], [&] {
      return "(pi P)(" + std::to_string(b) + ") = " + to_string(mass) + " != " + to_string(pi[b]);
    });
  }
  return report;
}

VerificationReport check_reversibility(const LumpedKernel& kernel, const CosetCountTable& table) {
  VerificationReport report("reversibility p=" + std::to_string(kernel.p) + " k=" + std::to_string(kernel.k));
  const auto pi = lumped_stationary(table);
  for (unsigned a = kernel.first(); a <= kernel.last(); ++a) {
    for (unsigned b = a + 1; b <= kernel.last(); ++b) {
      report.record("reversibility", pi[a] * kernel(a, b) == pi[b] * kernel(b, a),
                    [&] { return "detailed balance fails for a=" + std::to_string(a) + " b=" + std::to_string(b); });
    }
  }
  return report;
}

VerificationReport check_q_domination(const LumpedKernel& lumped, const LumpedKernel& q) {
  VerificationReport report("q-domination p=" + std::to_string(lumped.p) + " k=" + std::to_string(lumped.k));
  const BigRational factor = 1 - BigRational(1, factorial(lumped.p - 2));
  for (unsigned a = lumped.first(); a <= lumped.last(); ++a) {
    for (unsigned b = a; b <= lumped.last(); ++b) {
      report.record("q-domination", lumped(a, b) >= factor * q(a, b),
                    [&] { return "P(a,b) < (1-1/(p-2)!) Q(a,b) at a=" + std::to_string(a) + " b=" + std::to_string(b); });
    }
  }
  return report;
}

}  // namespace sbp
