#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "mpcov/measure.hpp"

namespace mpcov {

enum class EntryKind {
  GaussianReal,
  GaussianComplex,
  RademacherReal,
  RademacherComplex,
  UniformCentered,
};

/// Mean-zero unit-variance entry law (variance means E|t|^2 = 1).
struct EntryDistribution {
  EntryKind kind = EntryKind::GaussianReal;

  double fourth_moment() const;  // E|t|^4
  bool is_complex() const;
  bool has_finite_support() const;
  int support_size() const;  // 0 when the support is infinite

  std::string name() const;
  static EntryDistribution parse(const std::string& name);
};

/// A p x n rectangular ensemble with i.i.d. entries, or the mixed
/// checkerboard mode where entries at even/odd (i+j) parity follow two
/// different laws. p <= n is required.
struct EnsembleSpec {
  int p = 1;
  int n = 1;
  EntryDistribution entry;
  std::optional<EntryDistribution> entry_odd;  // checkerboard partner
  uint64_t master_seed = 1;

  /// Fourth-moment bound used by the determinant inequality (max over the
  /// entry laws involved).
  double beta() const;
  bool is_complex() const;
  void validate() const;
};

struct SampleMatrix {
  int p = 0;
  int n = 0;
  std::variant<Eigen::MatrixXd, Eigen::MatrixXcd> data;

  bool is_complex() const { return data.index() == 1; }
  double frobenius_sq() const;
};

/// Entry matrix for one trial; entries are drawn row-major from the trial's
/// stream, so the layout is part of the determinism contract.
SampleMatrix sample_matrix(const EnsembleSpec& spec, uint64_t trial);

/// Eigenvalues of (1/n) M M* padded with n-p exact zeros: the spectrum of the
/// n-dimensional companion (1/n) M* M without forming it.
struct SpectrumResult {
  int p = 0;
  int n = 0;
  std::vector<double> eigenvalues;  // ascending, length n
  double trace_gap = 0.0;           // |sum(eig) - frob^2/n| / max(1, frob^2/n)
};

SpectrumResult covariance_spectrum(const SampleMatrix& m);

/// Empirical spectral distribution of all n eigenvalues (weights 1/n; equal
/// eigenvalues merge, so the padding becomes the atom at zero).
EmpiricalMeasure esd(const SpectrumResult& spectrum);

/// ESD of the p Gram eigenvalues only (weights 1/p): the rescaled non-atomic
/// part used by the decomposition dist(mu_{p,n}, mu_phi) = phi * dist(+parts).
EmpiricalMeasure esd_plus(const SpectrumResult& spectrum);

/// prod_k (z - lambda_k) over all n eigenvalues, accumulated in log-magnitude
/// and argument; exactly zero when z hits an eigenvalue.
std::complex<double> charpoly_at(const SpectrumResult& spectrum, std::complex<double> z);

}  // namespace mpcov
