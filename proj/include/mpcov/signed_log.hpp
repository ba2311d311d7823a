#pragma once

#include <cmath>
#include <limits>

namespace mpcov {

/// A real number carried as (log|x|, sign) so quantities like p!(p+a)^{-p} or
/// high-degree polynomial values never leave the representable range.
/// sign == 0 encodes an exact zero (log_abs is then -inf and ignored).
struct SignedLogValue {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;

  static SignedLogValue zero() { return {}; }

  static SignedLogValue from_value(double x) {
    if (x == 0.0 || std::isnan(x)) return {};
    return {std::log(std::fabs(x)), x > 0 ? 1 : -1};
  }

  static SignedLogValue from_log(double log_abs, int sign) {
    if (sign == 0) return {};
    return {log_abs, sign > 0 ? 1 : -1};
  }

  bool is_zero() const { return sign == 0; }

  /// sign * exp(log_abs); may overflow/underflow double, caller's concern.
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

  friend SignedLogValue operator*(const SignedLogValue& a, const SignedLogValue& b) {
    if (a.sign == 0 || b.sign == 0) return {};
    return {a.log_abs + b.log_abs, a.sign * b.sign};
  }

  friend SignedLogValue operator/(const SignedLogValue& a, const SignedLogValue& b) {
    if (a.sign == 0) return {};
    return {a.log_abs - b.log_abs, a.sign * b.sign};
  }
};

}  // namespace mpcov
