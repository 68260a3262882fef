#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace sbp {

/// Significance level used by every distributional test.
inline constexpr double kSignificance = 0.001;

struct ChiSquareResult {
  double statistic = 0;
  unsigned degrees_of_freedom = 0;
  double p_value = 1;
  std::size_t bins = 0;  // after pooling

  bool passed(double alpha = kSignificance) const { return p_value >= alpha; }
  std::string summary() const;
};

/// Pearson goodness-of-fit of counts against probabilities. Adjacent bins are
/// pooled left to right until each pooled bin expects at least `min_expected`
/// draws; a short remainder joins the last pooled bin. With a single pooled
/// bin the test is degenerate and returns statistic 0, p-value 1.
/// Throws std::invalid_argument if the probabilities do not sum to 1 (1e-9).
ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed, const std::vector<double>& probabilities,
                               double min_expected = 5.0);

/// Upper tail P(χ²_dof >= x).
double chi_square_upper_tail(double x, unsigned dof);

/// Binomial(n, q) probabilities for 0..n.
std::vector<double> binomial_pmf(unsigned n, double q);

}  // namespace sbp
