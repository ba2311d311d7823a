#include "mpcov/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace mpcov {

EmpiricalMeasure::EmpiricalMeasure(std::vector<Atom> atoms) {
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.location) || !std::isfinite(a.weight))
      throw std::invalid_argument("measure atom must be finite");
    if (a.weight <= 0.0)
      throw std::invalid_argument("measure atom weight must be positive");
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.location < y.location; });
  atoms_.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (!atoms_.empty() && atoms_.back().location == a.location)
      atoms_.back().weight += a.weight;
    else
      atoms_.push_back(a);
  }
  total_mass_ = 0.0;
  for (const Atom& a : atoms_) total_mass_ += a.weight;
}

EmpiricalMeasure EmpiricalMeasure::uniform(const std::vector<double>& locations) {
  if (locations.empty()) throw std::invalid_argument("uniform measure needs at least one atom");
  std::vector<Atom> atoms;
  atoms.reserve(locations.size());
  const double w = 1.0 / static_cast<double>(locations.size());
  for (double x : locations) atoms.push_back({x, w});
  return EmpiricalMeasure(std::move(atoms));
}

double EmpiricalMeasure::support_radius() const {
  double r = 0.0;
  for (const Atom& a : atoms_) r = std::max(r, std::fabs(a.location));
  return r;
}

double EmpiricalMeasure::mass_at(double location) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), location,
                             [](const Atom& a, double t) { return a.location < t; });
  if (it != atoms_.end() && it->location == location) return it->weight;
  return 0.0;
}

double EmpiricalMeasure::cdf(double t) const {
  double acc = 0.0;
  for (const Atom& a : atoms_) {
    if (a.location > t) break;
    acc += a.weight;
  }
  return acc;
}

double EmpiricalMeasure::potential(std::complex<double> z) const {
  const double x = z.real();
  const double y = z.imag();
  const double y2 = y * y;
  double acc = 0.0;
  for (const Atom& a : atoms_) {
    const double dx = x - a.location;
    const double d2 = dx * dx + y2;
    if (d2 == 0.0) return -std::numeric_limits<double>::infinity();
    acc += a.weight * std::log(d2);
  }
  return 0.5 * acc;
}

std::string EmpiricalMeasure::to_json() const {
  nlohmann::json atoms = nlohmann::json::array();
  for (const Atom& a : atoms_) atoms.push_back({a.location, a.weight});
  nlohmann::json j;
  j["atoms"] = std::move(atoms);
  return j.dump();
}

EmpiricalMeasure EmpiricalMeasure::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("atoms") || !j["atoms"].is_array())
    throw std::invalid_argument("measure json needs an \"atoms\" array");
  std::vector<Atom> atoms;
  for (const auto& entry : j["atoms"]) {
    if (!entry.is_array() || entry.size() != 2)
      throw std::invalid_argument("measure atom must be a [location, weight] pair");
    atoms.push_back({entry[0].get<double>(), entry[1].get<double>()});
  }
  return EmpiricalMeasure(std::move(atoms));
}

}  // namespace mpcov
