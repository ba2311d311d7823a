#pragma once

#include "mpcov/measure.hpp"
#include "mpcov/signed_log.hpp"

namespace mpcov {

/// Degree and parameter of a generalized Laguerre polynomial L_p^(alpha).
/// The induced aspect ratio is phi = p/(p+alpha).
struct LaguerreSpec {
  int p = 1;
  double alpha = 0.0;

  double phi() const { return static_cast<double>(p) / (p + alpha); }
  void validate() const;
};

struct LaguerreValue {
  SignedLogValue value;
  /// log of the largest magnitude the three-term recurrence reached; the
  /// natural yardstick for "zero up to local scale" residual checks.
  double log_scale = 0.0;
};

/// L_p^(alpha)(x) by the forward three-term recurrence with per-step
/// renormalization (p = 0 is the constant 1).
LaguerreValue laguerre_eval(const LaguerreSpec& spec, double x);

/// The monic polynomial with the same zeros, evaluated at the potential-theory
/// argument: (-1)^p p! (p+alpha)^(-p) L_p^(alpha)((p+alpha) z).
SignedLogValue monic_scaled_log(const LaguerreSpec& spec, double z);

/// Zero measure: the p zeros of L_p^(alpha)((p+alpha) z), weight 1/p each.
/// Computed from the symmetric tridiagonal Jacobi matrix and polished by one
/// Newton step in signed-log arithmetic.
EmpiricalMeasure laguerre_zeros(const LaguerreSpec& spec);

/// log of the envelope c min(p, 1+p/alpha) (p+alpha)^(p/2) p^(-p/2) z^(-alpha/2)
/// exp((p+alpha) z / 2) exp(-alpha/2) bounding |L_p^(alpha)((p+alpha) z)|.
double envelope_rhs(const LaguerreSpec& spec, double z, double c);

/// log of the envelope c min(p, 1+p/alpha) p^(1/2) exp(p u_phi_plus(z))
/// bounding the monic form.
double monic_envelope_rhs(const LaguerreSpec& spec, double z, double c);

}  // namespace mpcov
