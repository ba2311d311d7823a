#pragma once

#include <complex>
#include <string>
#include <vector>

namespace mpcov {

/// Finite nonnegative atomic measure on the real line. Atoms are kept sorted
/// by location with exact duplicates merged, so the support is strictly
/// increasing and weights are strictly positive.
class EmpiricalMeasure {
 public:
  struct Atom {
    double location;
    double weight;
  };

  EmpiricalMeasure() = default;
  explicit EmpiricalMeasure(std::vector<Atom> atoms);

  /// Equal weights 1/k on the given locations (duplicates merge their mass).
  static EmpiricalMeasure uniform(const std::vector<double>& locations);

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  double total_mass() const { return total_mass_; }
  double support_radius() const;

  /// Weight at an exact location (0 if not an atom).
  double mass_at(double location) const;

  /// Right-continuous CDF.
  double cdf(double t) const;

  /// Logarithmic potential sum w_i log|z - x_i|; -inf sentinel when z sits
  /// exactly on an atom.
  double potential(std::complex<double> z) const;

  std::string to_json() const;
  static EmpiricalMeasure from_json(const std::string& text);

 private:
  std::vector<Atom> atoms_;
  double total_mass_ = 0.0;
};

}  // namespace mpcov
