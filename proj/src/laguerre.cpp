#include "mpcov/laguerre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "mpcov/mp_law.hpp"

namespace mpcov {

void LaguerreSpec::validate() const {
  if (p < 0) throw std::invalid_argument("laguerre degree must be nonnegative");
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("laguerre parameter alpha must be finite and nonnegative");
}

LaguerreValue laguerre_eval(const LaguerreSpec& spec, double x) {
  spec.validate();
  if (!std::isfinite(x)) throw std::invalid_argument("laguerre argument must be finite");
  LaguerreValue out;
  if (spec.p == 0) {
    out.value = SignedLogValue::from_value(1.0);
    out.log_scale = 0.0;
    return out;
  }
  const double alpha = spec.alpha;
  double prev = 1.0;               // L_0
  double cur = 1.0 + alpha - x;    // L_1
  double log_norm = 0.0;           // accumulated renormalization
  double peak = std::log(std::max(std::fabs(cur), 1.0));
  for (int k = 1; k < spec.p; ++k) {
    const double next =
        ((2.0 * k + alpha + 1.0 - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
    const double m = std::max(std::fabs(cur), std::fabs(prev));
    if (m > 0.0) {
      peak = std::max(peak, log_norm + std::log(m));
      if (m > 1e120 || m < 1e-120) {
        prev /= m;
        cur /= m;
        log_norm += std::log(m);
      }
    }
  }
  out.value = cur == 0.0 ? SignedLogValue::zero()
                         : SignedLogValue::from_log(log_norm + std::log(std::fabs(cur)),
                                                    cur > 0 ? 1 : -1);
  out.log_scale = peak;
  return out;
}

SignedLogValue monic_scaled_log(const LaguerreSpec& spec, double z) {
  spec.validate();
  const double scale = spec.p + spec.alpha;
  const LaguerreValue lv = laguerre_eval(spec, scale * z);
  if (lv.value.is_zero()) return SignedLogValue::zero();
  // lgamma(p+1) = log p!; the (-1)^p makes the leading coefficient +1.
  const double log_pref = std::lgamma(spec.p + 1.0) - spec.p * std::log(scale);
  const int sign_pref = spec.p % 2 == 0 ? 1 : -1;
  return SignedLogValue::from_log(log_pref + lv.value.log_abs, sign_pref * lv.value.sign);
}

EmpiricalMeasure laguerre_zeros(const LaguerreSpec& spec) {
  spec.validate();
  if (spec.p == 0) throw std::invalid_argument("zero measure needs degree at least 1");
  const int p = spec.p;
  const double alpha = spec.alpha;

  Eigen::VectorXd diag(p), subdiag(p > 1 ? p - 1 : 0);
  for (int k = 0; k < p; ++k) diag[k] = 2.0 * k + alpha + 1.0;
  for (int k = 1; k < p; ++k) subdiag[k - 1] = std::sqrt(k * (k + alpha));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, subdiag, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("laguerre zero eigensolve failed to converge");

  // one Newton polish per zero: d/dx L_p^(a)(x) = -L_{p-1}^(a+1)(x)
  const LaguerreSpec dspec{p - 1, alpha + 1.0};
  std::vector<double> zeros(p);
  for (int k = 0; k < p; ++k) {
    double x = solver.eigenvalues()[k];
    const SignedLogValue f = laguerre_eval(spec, x).value;
    const SignedLogValue df = laguerre_eval(dspec, x).value;
    if (!f.is_zero() && !df.is_zero()) {
      const double step = (f / df).value();  // note the sign flip below
      if (std::isfinite(step) && std::fabs(step) < 1e-3 * std::max(1.0, std::fabs(x)))
        x += step;  // x - f/f' with f' = -df
    }
    zeros[k] = x / (p + alpha);
  }
  std::sort(zeros.begin(), zeros.end());
  return EmpiricalMeasure::uniform(zeros);
}

double envelope_rhs(const LaguerreSpec& spec, double z, double c) {
  spec.validate();
  if (spec.p < 1) throw std::invalid_argument("envelope needs degree at least 1");
  if (!(c > 0.0)) throw std::invalid_argument("envelope constant must be positive");
  const double alpha = spec.alpha;
  if (z < 0.0 || (z == 0.0 && alpha > 0.0))
    throw std::domain_error("envelope argument must be positive (nonnegative when alpha=0)");
  const double p = spec.p;
  const double cap = alpha == 0.0 ? p : std::min(p, 1.0 + p / alpha);
  const double z_term = alpha == 0.0 ? 0.0 : -0.5 * alpha * std::log(z);
  return std::log(c) + std::log(cap) + 0.5 * p * (std::log(p + alpha) - std::log(p)) +
         z_term + 0.5 * (p + alpha) * z - 0.5 * alpha;
}

double monic_envelope_rhs(const LaguerreSpec& spec, double z, double c) {
  spec.validate();
  if (spec.p < 1) throw std::invalid_argument("envelope needs degree at least 1");
  if (!(c > 0.0)) throw std::invalid_argument("envelope constant must be positive");
  const double p = spec.p;
  const double cap = spec.alpha == 0.0 ? p : std::min(p, 1.0 + p / spec.alpha);
  return std::log(c) + std::log(cap) + 0.5 * std::log(p) +
         p * mp_potential_plus_value(spec.phi(), z);
}

}  // namespace mpcov
