#include "mpcov/mp_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mpcov/quadrature.hpp"

namespace mpcov {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_phi(double phi) {
  if (!(phi > 0.0) || phi > 1.0)
    throw std::invalid_argument("aspect ratio phi must lie in (0, 1]");
}

// Antiderivative of log(u^2 + y^2) in u, with the y = 0 limit built in. The
// kernel is even in y, so only |y| enters.
double log_kernel_primitive(double u, double y) {
  const double ya = std::fabs(y);
  if (u == 0.0) return 0.0;
  const double arc = ya == 0.0 ? 0.0 : 2.0 * ya * std::atan(u / ya);
  return u * std::log(u * u + ya * ya) - 2.0 * u + arc;
}

// Quadrature of 0.5 rho_plus(t) log((x-t)^2 + y^2) dt over [a,b]. When the
// real part falls inside the support the kernel is singular (integrably, for
// y = 0) or sharply spiked (small y), so the constant-density part at x is
// subtracted and integrated in closed form; the remainder vanishes at t = x
// and the adaptive rule handles it comfortably.
double plus_potential_by_quadrature(double phi, double a, double b,
                                    std::complex<double> z, double abs_tol) {
  const double x = z.real();
  const double y = z.imag();
  const double y2 = y * y;
  const bool interior = x > a && x < b;
  const double rho_x = interior ? mp_density_value(phi, x) / phi : 0.0;
  auto integrand = [&](double t) {
    const double dx = x - t;
    const double r2 = dx * dx + y2;
    if (r2 == 0.0) return 0.0;  // removable once the spike is subtracted
    const double rho = mp_density_value(phi, t) / phi - rho_x;
    return 0.5 * rho * std::log(r2);
  };
  if (interior) {
    const double correction =
        0.5 * rho_x * (log_kernel_primitive(b - x, y) - log_kernel_primitive(a - x, y));
    QuadratureResult left = integrate_adaptive(integrand, a, x, 0.5 * abs_tol);
    QuadratureResult right = integrate_adaptive(integrand, x, b, 0.5 * abs_tol);
    return left.value + right.value + correction;
  }
  return integrate_adaptive(integrand, a, b, abs_tol).value;
}

}  // namespace

std::pair<double, double> mp_edges(double phi) {
  check_phi(phi);
  const double s = std::sqrt(phi);
  return {(1.0 - s) * (1.0 - s), (1.0 + s) * (1.0 + s)};
}

double mp_density_value(double phi, double t) {
  check_phi(phi);
  const auto [a, b] = mp_edges(phi);
  if (t <= a || t >= b) return 0.0;
  return std::sqrt((t - a) * (b - t)) / (2.0 * kPi * t);
}

double mp_potential_plus_value(double phi, double z) {
  check_phi(phi);
  const auto [a, b] = mp_edges(phi);
  if (z >= a && z <= b) {
    // Closed form, valid on the support segment only.
    return (z - 1.0 - phi) / (2.0 * phi) -
           ((1.0 - phi) / (2.0 * phi)) * std::log(z) + 0.5 * std::log(phi);
  }
  return plus_potential_by_quadrature(phi, a, b, {z, 0.0}, 1e-9);
}

double mp_potential_value(double phi, double z) {
  check_phi(phi);
  if (phi == 1.0) return mp_potential_plus_value(phi, z);
  if (z == 0.0) return -std::numeric_limits<double>::infinity();
  return (1.0 - phi) * std::log(std::fabs(z)) + phi * mp_potential_plus_value(phi, z);
}

double mp_potential_plus_quadrature(double phi, std::complex<double> z, double abs_tol) {
  check_phi(phi);
  const auto [a, b] = mp_edges(phi);
  return plus_potential_by_quadrature(phi, a, b, z, abs_tol);
}

MPLaw::MPLaw(double phi, int cdf_nodes) : phi_(phi) {
  check_phi(phi);
  if (cdf_nodes < 16) throw std::invalid_argument("cdf cache needs at least 16 nodes");
  const auto [a, b] = mp_edges(phi);
  a_ = a;
  b_ = b;

  // Chebyshev-spaced nodes cluster at the edges where the density has square
  // root behavior, so fixed panels stay accurate there.
  const int n = cdf_nodes;
  grid_.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i)
    grid_[i] = mid - half * std::cos(kPi * static_cast<double>(i) / (n - 1));
  grid_.front() = a;
  grid_.back() = b;

  // Panel integrals in the angle variable t = a + (b-a) sin^2(theta), whose
  // Jacobian absorbs the edge square roots (and the 1/sqrt(t) blowup at the
  // hard edge a = 0 when phi = 1), leaving a trigonometric integrand that
  // fixed panels capture to full precision. The theta nodes land exactly on
  // the Chebyshev grid above.
  cum_.assign(n, 0.0);
  const double width = b - a;
  auto rho_theta = [&](double th) {
    const double s = std::sin(th);
    const double c = std::cos(th);
    const double w = width * s * s;  // t - a
    const double t = a + w;
    if (t == 0.0) return width * c * c / kPi;
    return width * w * c * c / (kPi * t);
  };
  const double dth = 0.5 * kPi / (n - 1);
  for (int i = 1; i < n; ++i)
    cum_[i] = cum_[i - 1] + integrate_gl16(rho_theta, (i - 1) * dth, i * dth);

  // Fritsch-Carlson monotone cubic slopes for the cumulative table.
  slope_.assign(n, 0.0);
  std::vector<double> h(n - 1), delta(n - 1);
  for (int i = 0; i + 1 < n; ++i) {
    h[i] = grid_[i + 1] - grid_[i];
    delta[i] = (cum_[i + 1] - cum_[i]) / h[i];
  }
  slope_[0] = delta[0];
  slope_[n - 1] = delta[n - 2];
  for (int i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] <= 0.0 || delta[i] <= 0.0) {
      slope_[i] = 0.0;
      continue;
    }
    const double w1 = 2.0 * h[i] + h[i - 1];
    const double w2 = h[i] + 2.0 * h[i - 1];
    slope_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
  }
}

double MPLaw::interp_cum(double t) const {
  const int n = static_cast<int>(grid_.size());
  const double mid = 0.5 * (a_ + b_);
  const double half = 0.5 * (b_ - a_);
  double u = (mid - t) / half;
  u = std::clamp(u, -1.0, 1.0);
  int i = static_cast<int>(std::acos(u) * (n - 1) / kPi);
  i = std::clamp(i, 0, n - 2);
  while (i > 0 && t < grid_[i]) --i;
  while (i + 2 < n && t > grid_[i + 1]) ++i;

  const double h = grid_[i + 1] - grid_[i];
  const double s = (t - grid_[i]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * cum_[i] + h10 * h * slope_[i] + h01 * cum_[i + 1] + h11 * h * slope_[i + 1];
}

double MPLaw::cdf(double t) const {
  if (t < 0.0) return 0.0;
  if (t < a_) return 1.0 - phi_;
  if (t >= b_) return 1.0;
  return 1.0 - phi_ + interp_cum(t);
}

double MPLaw::cdf_plus(double t) const {
  if (t < a_) return 0.0;
  if (t >= b_) return 1.0;
  return std::clamp(interp_cum(t) / phi_, 0.0, 1.0);
}

}  // namespace mpcov
