#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace mpcov {

/// Support edges ((1-sqrt(phi))^2, (1+sqrt(phi))^2) of the Marchenko-Pastur
/// law with ratio phi in (0,1].
std::pair<double, double> mp_edges(double phi);

/// Density of the non-atomic part of mu_phi at t (zero off the support band).
double mp_density_value(double phi, double t);

/// Logarithmic potential of the normalized non-atomic part mu_phi^+ at real z.
/// Closed form on [a,b]; adaptive quadrature of log|z-t| elsewhere (no
/// analytic continuation).
double mp_potential_plus_value(double phi, double z);

/// Logarithmic potential of the full law mu_phi at real z, through the atom
/// decomposition (1-phi) log|z| + phi u_phi^+(z). -inf sentinel at z=0 when
/// the atom is present.
double mp_potential_value(double phi, double z);

/// Potential of mu_phi^+ at a complex point, always by quadrature.
double mp_potential_plus_quadrature(double phi, std::complex<double> z,
                                    double abs_tol = 1e-9);

/// Marchenko-Pastur law with aspect ratio phi = p/n in (0,1]: the atom
/// (1-phi) delta_0 plus the density branch on [a,b]. Construction builds the
/// cumulative cache (Chebyshev-spaced nodes, monotone cubic interpolation);
/// the object is immutable afterwards and safe to share across threads.
class MPLaw {
 public:
  explicit MPLaw(double phi, int cdf_nodes = 4096);

  double phi() const { return phi_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double atom_mass() const { return 1.0 - phi_; }
  double support_radius() const { return b_; }

  double density(double t) const { return mp_density_value(phi_, t); }
  double density_plus(double t) const { return mp_density_value(phi_, t) / phi_; }

  /// Right-continuous CDF of the full law, including the atom at zero.
  double cdf(double t) const;
  /// CDF of the normalized non-atomic part mu_phi^+.
  double cdf_plus(double t) const;

  double potential_plus(double z) const { return mp_potential_plus_value(phi_, z); }
  double potential(double z) const { return mp_potential_value(phi_, z); }

  /// Integral of the density over [a,b]; equals phi up to quadrature error.
  double density_mass() const { return cum_.back(); }

 private:
  double interp_cum(double t) const;

  double phi_, a_, b_;
  std::vector<double> grid_;   // Chebyshev-spaced nodes on [a,b]
  std::vector<double> cum_;    // cumulative density integral from a
  std::vector<double> slope_;  // monotone cubic derivatives at the nodes
};

}  // namespace mpcov
