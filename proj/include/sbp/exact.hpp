#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace sbp {

using BigInt = mpz_class;
/// Always kept canonical (reduced, positive denominator).
using BigRational = mpq_class;

BigInt factorial(unsigned long n);
BigInt binomial(unsigned long n, unsigned long k);
BigInt ipow(const BigInt& base, unsigned long exponent);
/// base^exponent for any integer exponent; 0^0 == 1.
BigRational rpow(const BigRational& base, long exponent);

/// Memoised n! for 0 <= n <= limit.
class FactorialTable {
 public:
  explicit FactorialTable(unsigned long limit);
  const BigInt& operator()(unsigned long n) const;
  unsigned long limit() const { return static_cast<unsigned long>(values_.size()) - 1; }

 private:
  std::vector<BigInt> values_;
};

/// A fraction whose numerator and denominator are never reduced.
///
/// Used where canonicalising would mean gcds of numbers with hundreds of
/// thousands of bits (long exact matrix powers). Comparison is by
/// cross-multiplication and is exact.
struct Fraction {
  BigInt num{0};
  BigInt den{1};

  Fraction() = default;
  Fraction(BigInt n, BigInt d);
  explicit Fraction(const BigRational& q) : num(q.get_num()), den(q.get_den()) {}

  BigRational reduced() const;
  double to_double() const;
};

Fraction operator+(const Fraction& a, const Fraction& b);
Fraction operator-(const Fraction& a, const Fraction& b);
Fraction operator*(const Fraction& a, const Fraction& b);
Fraction abs(const Fraction& a);
/// Sign of a - b.
int compare(const Fraction& a, const Fraction& b);

/// A probability-style vector stored as integer numerators over one shared
/// denominator. Matrix–vector products stay in integers.
struct ScaledVector {
  std::vector<BigInt> num;
  BigInt den{1};

  std::size_t size() const { return num.size(); }
  Fraction at(std::size_t i) const { return {num[i], den}; }
  std::vector<BigRational> reduced() const;
  std::vector<double> to_double() const;
  /// Divides numerators and denominator by their common gcd.
  void normalize();
};

/// Square matrix of rationals as an integer matrix over a common denominator.
struct ScaledMatrix {
  std::size_t n = 0;
  std::vector<BigInt> num;  // row-major
  BigInt den{1};

  static ScaledMatrix from_rationals(const std::vector<std::vector<BigRational>>& rows);
  const BigInt& operator()(std::size_t r, std::size_t c) const { return num[r * n + c]; }
};

/// v · M, exact; the result's denominator is v.den * M.den.
ScaledVector left_multiply(const ScaledVector& v, const ScaledMatrix& m);

/// Half-L1 distance between two exact vectors of equal length.
Fraction tv_distance(const ScaledVector& mu, const ScaledVector& nu);

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const BigRational& q);
std::string to_string(const BigInt& z);

}  // namespace sbp
