#pragma once

#include <vector>

namespace mpcov {

/// Median by sorting a copy; even length averages the middle pair.
double median_of(std::vector<double> values);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(long successes, long trials, double z = 1.96);

struct SlopeFit {
  bool ok = false;
  double slope = 0.0;
  double slope_se = 0.0;
  double slope_lo = 0.0;
  double slope_hi = 0.0;
  double intercept = 0.0;
  int points = 0;
};

/// Weighted least-squares line y = intercept + slope x, where inv_var[i] is
/// the known inverse variance of y[i]; the slope interval is slope +- z se
/// with se^2 = 1 / sum w (x - xbar)^2. Needs at least two distinct x.
SlopeFit weighted_line_fit(const std::vector<double>& x, const std::vector<double>& y,
                           const std::vector<double>& inv_var, double z = 1.96);

}  // namespace mpcov
