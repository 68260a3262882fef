#include "sbp/stats.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sbp {

std::string ChiSquareResult::summary() const {
  std::ostringstream os;
  os << "chi2=" << statistic << " dof=" << degrees_of_freedom << " p=" << p_value << " bins=" << bins;
  return os.str();
}

double chi_square_upper_tail(double x, unsigned dof) {
  if (dof == 0) return 1.0;
  boost::math::chi_squared_distribution<double> dist(dof);
  return boost::math::cdf(boost::math::complement(dist, x));
}

std::vector<double> binomial_pmf(unsigned n, double q) {
  std::vector<double> out(n + 1);
  if (n == 0) {
    out[0] = 1.0;
    return out;
  }
  boost::math::binomial_distribution<double> dist(n, q);
  for (unsigned i = 0; i <= n; ++i) out[i] = boost::math::pdf(dist, i);
  return out;
}

ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed, const std::vector<double>& probabilities,
                               double min_expected) {
  if (observed.size() != probabilities.size() || observed.empty()) {
    throw std::invalid_argument("chi_square_gof: observed and probabilities must be non-empty and equally long");
  }
  const double mass = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  if (std::fabs(mass - 1.0) > 1e-9) throw std::invalid_argument("chi_square_gof: probabilities do not sum to 1");
  const double total = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));

  std::vector<double> obs_pooled;
  std::vector<double> exp_pooled;
  double obs_acc = 0;
  double exp_acc = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    obs_acc += static_cast<double>(observed[i]);
    exp_acc += probabilities[i] * total;
    if (exp_acc >= min_expected) {
      obs_pooled.push_back(obs_acc);
      exp_pooled.push_back(exp_acc);
      obs_acc = exp_acc = 0;
    }
  }
  if (exp_acc > 0 || obs_acc > 0) {
    if (exp_pooled.empty()) {
      obs_pooled.push_back(obs_acc);
      exp_pooled.push_back(exp_acc);
    } else {
      obs_pooled.back() += obs_acc;
      exp_pooled.back() += exp_acc;
    }
  }

  ChiSquareResult result;
  result.bins = obs_pooled.size();
  if (result.bins <= 1) return result;
  for (std::size_t i = 0; i < result.bins; ++i) {
    const double d = obs_pooled[i] - exp_pooled[i];
    result.statistic += d * d / exp_pooled[i];
  }
  result.degrees_of_freedom = static_cast<unsigned>(result.bins - 1);
  result.p_value = chi_square_upper_tail(result.statistic, result.degrees_of_freedom);
  return result;
}

}  // namespace sbp
