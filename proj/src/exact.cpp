#include "sbp/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace sbp {

BigInt factorial(unsigned long n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

BigInt binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

BigInt ipow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

BigRational rpow(const BigRational& base, long exponent) {
  if (exponent >= 0) {
    const auto e = static_cast<unsigned long>(exponent);
    return BigRational(ipow(base.get_num(), e), ipow(base.get_den(), e));
  }
  if (base == 0) throw std::domain_error("rpow: zero to a negative power");
  const auto e = static_cast<unsigned long>(-exponent);
  BigRational out(ipow(base.get_den(), e), ipow(base.get_num(), e));
  out.canonicalize();
  return out;
}

FactorialTable::FactorialTable(unsigned long limit) : values_(limit + 1) {
  values_[0] = 1;
  for (unsigned long i = 1; i <= limit; ++i) values_[i] = values_[i - 1] * i;
}

const BigInt& FactorialTable::operator()(unsigned long n) const {
  if (n >= values_.size()) throw std::out_of_range("FactorialTable: " + std::to_string(n) + "! not memoised");
  return values_[n];
}

Fraction::Fraction(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {
  if (den == 0) throw std::domain_error("Fraction: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
}

BigRational Fraction::reduced() const {
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

// num/den to double without reducing; each mantissa carries 53 bits.
double quotient(const BigInt& num, const BigInt& den) {
  if (num == 0) return 0.0;
  long en = 0;
  long ed = 0;
  const double mn = mpz_get_d_2exp(&en, num.get_mpz_t());
  const double md = mpz_get_d_2exp(&ed, den.get_mpz_t());
  return std::ldexp(mn / md, static_cast<int>(en - ed));
}

}  // namespace

double Fraction::to_double() const { return quotient(num, den); }

Fraction operator+(const Fraction& a, const Fraction& b) {
  if (a.den == b.den) return {a.num + b.num, a.den};
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}

Fraction operator-(const Fraction& a, const Fraction& b) {
  if (a.den == b.den) return {a.num - b.num, a.den};
  return {a.num * b.den - b.num * a.den, a.den * b.den};
}

Fraction operator*(const Fraction& a, const Fraction& b) { return {a.num * b.num, a.den * b.den}; }

Fraction abs(const Fraction& a) { return {::abs(a.num), a.den}; }

int compare(const Fraction& a, const Fraction& b) {
  if (a.den == b.den) return cmp(a.num, b.num);
  const BigInt lhs = a.num * b.den;
  const BigInt rhs = b.num * a.den;
  return cmp(lhs, rhs);
}

std::vector<BigRational> ScaledVector::reduced() const {
  std::vector<BigRational> out;
  out.reserve(num.size());
  for (const auto& x : num) {
    BigRational q(x, den);
    q.canonicalize();
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<double> ScaledVector::to_double() const {
  std::vector<double> out;
  out.reserve(num.size());
  for (const auto& x : num) out.push_back(quotient(x, den));
  return out;
}

void ScaledVector::normalize() {
  BigInt g = den;
  for (const auto& x : num) {
    if (g == 1) return;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  if (g == 1) return;
  for (auto& x : num) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
}

ScaledMatrix ScaledMatrix::from_rationals(const std::vector<std::vector<BigRational>>& rows) {
  ScaledMatrix m;
  m.n = rows.size();
  m.den = 1;
  for (const auto& row : rows) {
    if (row.size() != m.n) throw std::invalid_argument("ScaledMatrix: matrix is not square");
    for (const auto& q : row) mpz_lcm(m.den.get_mpz_t(), m.den.get_mpz_t(), q.get_den_mpz_t());
  }
  m.num.reserve(m.n * m.n);
  for (const auto& row : rows) {
    for (const auto& q : row) m.num.push_back(q.get_num() * (m.den / q.get_den()));
  }
  return m;
}

ScaledVector left_multiply(const ScaledVector& v, const ScaledMatrix& m) {
  if (v.size() != m.n) throw std::invalid_argument("left_multiply: size mismatch");
  ScaledVector out;
  out.num.assign(m.n, BigInt(0));
  for (std::size_t r = 0; r < m.n; ++r) {
    if (v.num[r] == 0) continue;
    for (std::size_t c = 0; c < m.n; ++c) {
      const auto& entry = m(r, c);
      if (entry != 0) mpz_addmul(out.num[c].get_mpz_t(), v.num[r].get_mpz_t(), entry.get_mpz_t());
    }
  }
  out.den = v.den * m.den;
  return out;
}

Fraction tv_distance(const ScaledVector& mu, const ScaledVector& nu) {
  if (mu.size() != nu.size()) throw std::invalid_argument("tv_distance: size mismatch");
  BigInt total = 0;
  BigInt term;
  if (mu.den == nu.den) {
    for (std::size_t i = 0; i < mu.size(); ++i) {
      term = mu.num[i] - nu.num[i];
      total += ::abs(term);
    }
    return {total, 2 * mu.den};
  }
  for (std::size_t i = 0; i < mu.size(); ++i) {
    term = mu.num[i] * nu.den - nu.num[i] * mu.den;
    total += ::abs(term);
  }
  return {total, 2 * mu.den * nu.den};
}

std::string to_string(const BigRational& value) {
  BigRational q = value;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

}  // namespace sbp
