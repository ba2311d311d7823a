#include "mpcov/potential.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mpcov {

namespace {

double log_abs_complex(std::complex<double> z, double atom) {
  const double dx = z.real() - atom;
  const double d2 = dx * dx + z.imag() * z.imag();
  if (d2 == 0.0) return -std::numeric_limits<double>::infinity();
  return 0.5 * std::log(d2);
}

}  // namespace

PotentialField PotentialField::empirical(EmpiricalMeasure m) {
  if (m.empty()) throw std::invalid_argument("empirical potential needs atoms");
  PotentialField f;
  f.kind_ = Kind::Empirical;
  f.measure_ = std::move(m);
  f.atom_locations_.reserve(f.measure_.atoms().size());
  for (const auto& a : f.measure_.atoms()) f.atom_locations_.push_back(a.location);
  return f;
}

PotentialField PotentialField::mp_plus(std::shared_ptr<const MPLaw> law) {
  if (!law) throw std::invalid_argument("null law");
  PotentialField f;
  f.kind_ = Kind::MPPlus;
  f.law_ = std::move(law);
  return f;
}

PotentialField PotentialField::mp_full(std::shared_ptr<const MPLaw> law) {
  if (!law) throw std::invalid_argument("null law");
  PotentialField f;
  f.kind_ = Kind::MPFull;
  f.law_ = std::move(law);
  if (f.law_->atom_mass() > 0.0) f.atom_locations_.push_back(0.0);
  return f;
}

PotentialField PotentialField::point_mass(double location) {
  PotentialField f;
  f.kind_ = Kind::PointMass;
  f.point_ = location;
  f.atom_locations_.push_back(location);
  return f;
}

double PotentialField::total_mass() const {
  switch (kind_) {
    case Kind::Empirical: return measure_.total_mass();
    case Kind::MPPlus:
    case Kind::MPFull:
    case Kind::PointMass: return 1.0;
  }
  return 0.0;
}

double PotentialField::support_radius() const {
  switch (kind_) {
    case Kind::Empirical: return measure_.support_radius();
    case Kind::MPPlus:
    case Kind::MPFull: return law_->support_radius();
    case Kind::PointMass: return std::fabs(point_);
  }
  return 0.0;
}

double PotentialField::value(std::complex<double> z) const {
  switch (kind_) {
    case Kind::Empirical:
      return measure_.potential(z);
    case Kind::MPPlus:
      if (z.imag() == 0.0 && z.real() >= law_->a() && z.real() <= law_->b())
        return law_->potential_plus(z.real());
      return mp_potential_plus_quadrature(law_->phi(), z);
    case Kind::MPFull: {
      if (z.imag() == 0.0) return law_->potential(z.real());
      const double plus = mp_potential_plus_quadrature(law_->phi(), z);
      return law_->atom_mass() * log_abs_complex(z, 0.0) + law_->phi() * plus;
    }
    case Kind::PointMass:
      return log_abs_complex(z, point_);
  }
  return 0.0;
}

double PotentialField::quadrature_value(std::complex<double> z, double abs_tol) const {
  switch (kind_) {
    case Kind::Empirical:
      return measure_.potential(z);  // exact finite sum
    case Kind::MPPlus:
      return mp_potential_plus_quadrature(law_->phi(), z, abs_tol);
    case Kind::MPFull:
      return law_->atom_mass() * log_abs_complex(z, 0.0) +
             law_->phi() * mp_potential_plus_quadrature(law_->phi(), z, abs_tol);
    case Kind::PointMass:
      return log_abs_complex(z, point_);
  }
  return 0.0;
}

const EmpiricalMeasure& PotentialField::empirical_measure() const {
  if (kind_ != Kind::Empirical) throw std::logic_error("not an empirical potential");
  return measure_;
}

const MPLaw& PotentialField::law() const {
  if (kind_ != Kind::MPPlus && kind_ != Kind::MPFull) throw std::logic_error("not a law potential");
  return *law_;
}

double potential_quadrature(const PotentialField& f, std::complex<double> z, double abs_tol) {
  return f.quadrature_value(z, abs_tol);
}

}  // namespace mpcov
