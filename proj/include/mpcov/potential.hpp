#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "mpcov/measure.hpp"
#include "mpcov/mp_law.hpp"

namespace mpcov {

/// A measure on the real line seen through its logarithmic potential:
/// an atomic measure, the Marchenko-Pastur law (full or normalized non-atomic
/// part), or a single unit point mass. Evaluation returns the -inf sentinel
/// exactly on an atom.
class PotentialField {
 public:
  enum class Kind { Empirical, MPPlus, MPFull, PointMass };

  static PotentialField empirical(EmpiricalMeasure m);
  static PotentialField mp_plus(std::shared_ptr<const MPLaw> law);
  static PotentialField mp_full(std::shared_ptr<const MPLaw> law);
  static PotentialField point_mass(double location);

  Kind kind() const { return kind_; }
  double total_mass() const;
  double support_radius() const;

  /// Atom locations (empty for MPPlus), used for singularity handling and
  /// grid refinement. All supported measures live on the real line.
  const std::vector<double>& atom_locations() const { return atom_locations_; }

  /// Potential value; closed forms and caches allowed.
  double value(std::complex<double> z) const;

  /// Potential by quadrature only (atomic parts are exact finite sums); this
  /// is the oracle path for the closed forms.
  double quadrature_value(std::complex<double> z, double abs_tol = 1e-8) const;

  const EmpiricalMeasure& empirical_measure() const;
  const MPLaw& law() const;

 private:
  PotentialField() = default;
  Kind kind_ = Kind::PointMass;
  EmpiricalMeasure measure_;
  std::shared_ptr<const MPLaw> law_;
  double point_ = 0.0;
  std::vector<double> atom_locations_;
};

/// Free-function form of the quadrature path.
double potential_quadrature(const PotentialField& f, std::complex<double> z,
                            double abs_tol = 1e-8);

}  // namespace mpcov
