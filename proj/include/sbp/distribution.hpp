#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "sbp/exact.hpp"

namespace sbp {

/// Probability vector over the integer range [first, first + size).
template <class Weight>
struct Distribution {
  unsigned first = 0;
  std::vector<Weight> weights;

  std::size_t size() const { return weights.size(); }
  unsigned last() const { return first + static_cast<unsigned>(weights.size()) - 1; }
  const Weight& operator[](unsigned index) const { return weights.at(index - first); }
  Weight& operator[](unsigned index) { return weights.at(index - first); }

  static Distribution point_mass(unsigned first, std::size_t size, unsigned at) {
    Distribution d{first, std::vector<Weight>(size, Weight(0))};
    d[at] = Weight(1);
    return d;
  }
};

using ExactDistribution = Distribution<BigRational>;
using FloatDistribution = Distribution<double>;

namespace detail {
template <class W>
void check_same_range(const Distribution<W>& mu, const Distribution<W>& nu) {
  if (mu.first != nu.first || mu.size() != nu.size()) {
    throw std::invalid_argument("tv_distance: distributions live on different index ranges");
  }
}
}  // namespace detail

/// (1/2) Σ |μ - ν|, exact.
inline BigRational tv_distance(const ExactDistribution& mu, const ExactDistribution& nu) {
  detail::check_same_range(mu, nu);
  BigRational total = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) total += ::abs(BigRational(mu.weights[i] - nu.weights[i]));
  return total / 2;
}

inline double tv_distance(const FloatDistribution& mu, const FloatDistribution& nu) {
  detail::check_same_range(mu, nu);
  double total = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) total += std::fabs(mu.weights[i] - nu.weights[i]);
  return total / 2;
}

inline FloatDistribution to_float(const ExactDistribution& d) {
  FloatDistribution out{d.first, {}};
  out.weights.reserve(d.size());
  for (const auto& w : d.weights) out.weights.push_back(w.get_d());
  return out;
}

}  // namespace sbp
