#include "mpcov/ensemble.hpp"

#include <cmath>
#include <stdexcept>

#include "mpcov/rng.hpp"

namespace mpcov {

double EntryDistribution::fourth_moment() const {
  switch (kind) {
    case EntryKind::GaussianReal: return 3.0;
    case EntryKind::GaussianComplex: return 2.0;
    case EntryKind::RademacherReal: return 1.0;
    case EntryKind::RademacherComplex: return 1.0;
    case EntryKind::UniformCentered: return 9.0 / 5.0;
  }
  return 0.0;
}

bool EntryDistribution::is_complex() const {
  return kind == EntryKind::GaussianComplex || kind == EntryKind::RademacherComplex;
}

bool EntryDistribution::has_finite_support() const {
  return kind == EntryKind::RademacherReal || kind == EntryKind::RademacherComplex;
}

int EntryDistribution::support_size() const {
  switch (kind) {
    case EntryKind::RademacherReal: return 2;
    case EntryKind::RademacherComplex: return 4;
    default: return 0;
  }
}

std::string EntryDistribution::name() const {
  switch (kind) {
    case EntryKind::GaussianReal: return "gaussian-real";
    case EntryKind::GaussianComplex: return "gaussian-complex";
    case EntryKind::RademacherReal: return "rademacher-real";
    case EntryKind::RademacherComplex: return "rademacher-complex";
    case EntryKind::UniformCentered: return "uniform-centered";
  }
  return "?";
}

EntryDistribution EntryDistribution::parse(const std::string& name) {
  if (name == "gaussian-real") return {EntryKind::GaussianReal};
  if (name == "gaussian-complex") return {EntryKind::GaussianComplex};
  if (name == "rademacher-real") return {EntryKind::RademacherReal};
  if (name == "rademacher-complex") return {EntryKind::RademacherComplex};
  if (name == "uniform-centered") return {EntryKind::UniformCentered};
  throw std::invalid_argument("unknown entry distribution: " + name);
}

double EnsembleSpec::beta() const {
  double b = entry.fourth_moment();
  if (entry_odd) b = std::max(b, entry_odd->fourth_moment());
  return b;
}

bool EnsembleSpec::is_complex() const {
  return entry.is_complex() || (entry_odd && entry_odd->is_complex());
}

void EnsembleSpec::validate() const {
  if (p < 1) throw std::invalid_argument("ensemble needs p >= 1");
  if (n < p) throw std::invalid_argument("ensemble needs p <= n");
}

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::complex<double> draw_entry(const EntryDistribution& e, SplitMix64& rng,
                                GaussianSource& gauss) {
  switch (e.kind) {
    case EntryKind::GaussianReal:
      return {gauss.next(), 0.0};
    case EntryKind::GaussianComplex: {
      const double re = gauss.next();
      const double im = gauss.next();
      return {re * kInvSqrt2, im * kInvSqrt2};
    }
    case EntryKind::RademacherReal:
      return {(rng.next() >> 63) ? 1.0 : -1.0, 0.0};
    case EntryKind::RademacherComplex:
      switch (rng.next() >> 62) {
        case 0: return {1.0, 0.0};
        case 1: return {-1.0, 0.0};
        case 2: return {0.0, 1.0};
        default: return {0.0, -1.0};
      }
    case EntryKind::UniformCentered:
      return {(2.0 * rng.next_double() - 1.0) * kSqrt3, 0.0};
  }
  return {0.0, 0.0};
}

}  // namespace

double SampleMatrix::frobenius_sq() const {
  if (is_complex()) return std::get<Eigen::MatrixXcd>(data).squaredNorm();
  return std::get<Eigen::MatrixXd>(data).squaredNorm();
}

SampleMatrix sample_matrix(const EnsembleSpec& spec, uint64_t trial) {
  spec.validate();
  SplitMix64 rng(trial_stream_seed(spec.master_seed, trial));
  GaussianSource gauss(rng);
  SampleMatrix out;
  out.p = spec.p;
  out.n = spec.n;
  if (spec.is_complex()) {
    Eigen::MatrixXcd m(spec.p, spec.n);
    for (int i = 0; i < spec.p; ++i)
      for (int j = 0; j < spec.n; ++j) {
        const EntryDistribution& e =
            (spec.entry_odd && ((i + j) & 1)) ? *spec.entry_odd : spec.entry;
        m(i, j) = draw_entry(e, rng, gauss);
      }
    out.data = std::move(m);
  } else {
    Eigen::MatrixXd m(spec.p, spec.n);
    for (int i = 0; i < spec.p; ++i)
      for (int j = 0; j < spec.n; ++j) {
        const EntryDistribution& e =
            (spec.entry_odd && ((i + j) & 1)) ? *spec.entry_odd : spec.entry;
        m(i, j) = draw_entry(e, rng, gauss).real();
      }
    out.data = std::move(m);
  }
  return out;
}

SpectrumResult covariance_spectrum(const SampleMatrix& m) {
  if (m.p < 1 || m.n < m.p) throw std::invalid_argument("matrix must satisfy 1 <= p <= n");
  SpectrumResult out;
  out.p = m.p;
  out.n = m.n;
  out.eigenvalues.assign(m.n, 0.0);

  Eigen::VectorXd gram_eigs;
  if (m.is_complex()) {
    const auto& mat = std::get<Eigen::MatrixXcd>(m.data);
    Eigen::MatrixXcd gram = (mat * mat.adjoint()) / static_cast<double>(m.n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("gram eigensolve failed to converge");
    gram_eigs = solver.eigenvalues();
  } else {
    const auto& mat = std::get<Eigen::MatrixXd>(m.data);
    Eigen::MatrixXd gram = (mat * mat.transpose()) / static_cast<double>(m.n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("gram eigensolve failed to converge");
    gram_eigs = solver.eigenvalues();
  }

  // clamp the backward-error negatives sitting just below zero
  const double scale = std::max(std::fabs(gram_eigs[0]), std::fabs(gram_eigs[m.p - 1]));
  const double clamp = 1e-10 * std::max(scale, 1.0);
  double sum = 0.0;
  for (int k = 0; k < m.p; ++k) {
    double v = gram_eigs[k];
    if (v < 0.0) {
      if (v < -clamp)
        throw std::runtime_error("gram matrix produced a significantly negative eigenvalue");
      v = 0.0;
    }
    out.eigenvalues[m.n - m.p + k] = v;
    sum += v;
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());

  const double trace = m.frobenius_sq() / static_cast<double>(m.n);
  out.trace_gap = std::fabs(sum - trace) / std::max(1.0, trace);
  return out;
}

EmpiricalMeasure esd(const SpectrumResult& spectrum) {
  std::vector<EmpiricalMeasure::Atom> atoms;
  atoms.reserve(spectrum.eigenvalues.size());
  const double w = 1.0 / static_cast<double>(spectrum.n);
  for (double v : spectrum.eigenvalues) atoms.push_back({v, w});
  return EmpiricalMeasure(std::move(atoms));
}

EmpiricalMeasure esd_plus(const SpectrumResult& spectrum) {
  std::vector<EmpiricalMeasure::Atom> atoms;
  atoms.reserve(spectrum.p);
  const double w = 1.0 / static_cast<double>(spectrum.p);
  const size_t offset = spectrum.eigenvalues.size() - spectrum.p;
  for (size_t k = offset; k < spectrum.eigenvalues.size(); ++k)
    atoms.push_back({spectrum.eigenvalues[k], w});
  return EmpiricalMeasure(std::move(atoms));
}

std::complex<double> charpoly_at(const SpectrumResult& spectrum, std::complex<double> z) {
  double log_mag = 0.0;
  double arg = 0.0;
  for (double lambda : spectrum.eigenvalues) {
    const std::complex<double> d = z - lambda;
    if (d == std::complex<double>(0.0, 0.0)) return {0.0, 0.0};
    log_mag += 0.5 * std::log(std::norm(d));
    arg += std::arg(d);
  }
  return std::polar(std::exp(log_mag), arg);
}

}  // namespace mpcov
