#include "mpcov/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mpcov {

double median_of(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty sample");
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

WilsonInterval wilson_interval(long successes, long trials, double z) {
  if (trials <= 0) throw std::invalid_argument("wilson interval needs trials >= 1");
  if (successes < 0 || successes > trials) {
    throw std::invalid_argument("successes out of range");
  }
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  WilsonInterval out;
  out.lo = std::max(0.0, center - half);
  out.hi = std::min(1.0, center + half);
  return out;
}

SlopeFit weighted_line_fit(const std::vector<double>& x, const std::vector<double>& y,
                           const std::vector<double>& inv_var, double z) {
  SlopeFit fit;
  if (x.size() != y.size() || x.size() != inv_var.size()) {
    throw std::invalid_argument("weighted fit needs equal-length inputs");
  }
  const size_t n = x.size();
  if (n < 2) return fit;
  double sw = 0, swx = 0, swy = 0;
  for (size_t i = 0; i < n; ++i) {
    if (!(inv_var[i] > 0.0) || !std::isfinite(inv_var[i])) {
      throw std::invalid_argument("weights must be positive and finite");
    }
    sw += inv_var[i];
    swx += inv_var[i] * x[i];
    swy += inv_var[i] * y[i];
  }
  const double xbar = swx / sw;
  const double ybar = swy / sw;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = x[i] - xbar;
    sxx += inv_var[i] * dx * dx;
    sxy += inv_var[i] * dx * (y[i] - ybar);
  }
  if (!(sxx > 0.0)) return fit;  // all x identical
  fit.ok = true;
  fit.points = static_cast<int>(n);
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  fit.slope_se = 1.0 / std::sqrt(sxx);
  fit.slope_lo = fit.slope - z * fit.slope_se;
  fit.slope_hi = fit.slope + z * fit.slope_se;
  return fit;
}

}  // namespace mpcov
