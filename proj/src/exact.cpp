#include "mpcov/exact.hpp"

#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace mpcov {

namespace {
const Rational kZero = 0;
}

ExactPolynomial::ExactPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

ExactPolynomial ExactPolynomial::constant(Rational c) {
  std::vector<Rational> v;
  v.push_back(std::move(c));
  return ExactPolynomial(std::move(v));
}

ExactPolynomial ExactPolynomial::monomial(int degree, Rational c) {
  if (degree < 0) throw std::invalid_argument("monomial degree must be >= 0");
  std::vector<Rational> v(static_cast<size_t>(degree) + 1, kZero);
  v.back() = std::move(c);
  return ExactPolynomial(std::move(v));
}

const Rational& ExactPolynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return kZero;
  return coeffs_[static_cast<size_t>(k)];
}

void ExactPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

ExactPolynomial& ExactPolynomial::operator+=(const ExactPolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), kZero);
  for (size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

ExactPolynomial& ExactPolynomial::operator-=(const ExactPolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), kZero);
  for (size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

ExactPolynomial operator+(ExactPolynomial a, const ExactPolynomial& b) {
  a += b;
  return a;
}

ExactPolynomial operator-(ExactPolynomial a, const ExactPolynomial& b) {
  a -= b;
  return a;
}

ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return ExactPolynomial();
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) {
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return ExactPolynomial(std::move(out));
}

ExactPolynomial& ExactPolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

Rational ExactPolynomial::eval(const Rational& z) const {
  Rational acc = 0;
  for (size_t i = coeffs_.size(); i-- > 0;) {
    acc *= z;
    acc += coeffs_[i];
  }
  return acc;
}

double ExactPolynomial::eval_double(double z) const {
  long double acc = 0.0L;
  for (size_t i = coeffs_.size(); i-- > 0;) {
    acc = acc * z + static_cast<long double>(coeffs_[i].get_d());
  }
  return static_cast<double>(acc);
}

std::string ExactPolynomial::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : coeffs_) {
    arr.push_back({c.get_num().get_str(), c.get_den().get_str()});
  }
  nlohmann::json doc;
  doc["coeffs"] = std::move(arr);
  return doc.dump();
}

ExactPolynomial ExactPolynomial::from_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  if (!doc.contains("coeffs") || !doc["coeffs"].is_array()) {
    throw std::invalid_argument("polynomial json must contain a coeffs array");
  }
  std::vector<Rational> coeffs;
  coeffs.reserve(doc["coeffs"].size());
  for (const auto& item : doc["coeffs"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_string() || !item[1].is_string()) {
      throw std::invalid_argument("each coefficient must be a [num, den] string pair");
    }
    BigInt num(item[0].get<std::string>());
    BigInt den(item[1].get<std::string>());
    if (den == 0) throw std::invalid_argument("coefficient denominator is zero");
    coeffs.emplace_back(num, den);
  }
  return ExactPolynomial(std::move(coeffs));
}

}  // namespace mpcov
