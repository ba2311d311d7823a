#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

namespace mpcov {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Dense univariate polynomial with exact rational coefficients, ascending
/// degree order. Trailing zero coefficients are trimmed, so degree() of the
/// zero polynomial is -1.
class ExactPolynomial {
 public:
  ExactPolynomial() = default;
  explicit ExactPolynomial(std::vector<Rational> coeffs);
  static ExactPolynomial constant(Rational c);
  static ExactPolynomial monomial(int degree, Rational c = 1);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& coeff(int k) const;  // 0 outside the stored range

  ExactPolynomial& operator+=(const ExactPolynomial& other);
  ExactPolynomial& operator-=(const ExactPolynomial& other);
  friend ExactPolynomial operator+(ExactPolynomial a, const ExactPolynomial& b);
  friend ExactPolynomial operator-(ExactPolynomial a, const ExactPolynomial& b);
  friend ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b);
  ExactPolynomial& operator*=(const Rational& c);
  bool operator==(const ExactPolynomial& other) const { return coeffs_ == other.coeffs_; }
  bool operator!=(const ExactPolynomial& other) const { return !(*this == other); }

  Rational eval(const Rational& z) const;
  double eval_double(double z) const;  // long double Horner, convenience only

  /// {"coeffs": [[num, den], ...]} with decimal-string big integers.
  std::string to_json() const;
  static ExactPolynomial from_json(const std::string& text);

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace mpcov
