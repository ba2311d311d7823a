#pragma once

#include <functional>

namespace mpcov {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// Adaptive Gauss-Kronrod 7/15 on [a,b] with absolute tolerance. Intervals are
/// bisected until the local error estimate passes a geometrically relaxed
/// share of the tolerance, which lets integrable endpoint singularities
/// (logarithms, inverse square roots) converge. Kronrod nodes are interior,
/// so endpoints are never evaluated.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    int max_depth = 60);

/// Fixed 16-point Gauss-Legendre panel, for smooth integrands on short panels.
double integrate_gl16(const std::function<double(double)>& f, double a, double b);

}  // namespace mpcov
