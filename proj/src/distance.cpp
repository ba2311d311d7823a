#include "mpcov/distance.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "mpcov/quadrature.hpp"

namespace mpcov {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double catmull_rom(double p0, double p1, double p2, double p3, double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return 0.5 * (2.0 * p1 + (p2 - p0) * t +
                (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t2 +
                (3.0 * p1 - p0 - 3.0 * p2 + p3) * t3);
}

void run_rows(int rows, int threads, const std::function<void(int)>& body) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 1 || rows <= 1) {
    for (int r = 0; r < rows; ++r) body(r);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min(threads, rows);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int r = next.fetch_add(1); r < rows; r = next.fetch_add(1)) body(r);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

DistFsEngine::DistFsEngine(PotentialField reference, DistFsOptions opt)
    : ref_(std::move(reference)), opt_(opt) {
  if (opt_.n_theta < 8 || opt_.n_theta % 2 != 0)
    throw std::invalid_argument("n_theta must be even and at least 8");
  if (opt_.n_s < 8) throw std::invalid_argument("n_s must be at least 8");
  if (opt_.refine_factor < 1) throw std::invalid_argument("refine_factor must be positive");
  if (!(opt_.truncation_factor > 0)) throw std::invalid_argument("truncation factor must be positive");
  half_rows_ = opt_.n_theta / 2;
  build_aux();
  build_base();
}

void DistFsEngine::build_aux() {
  if (ref_.kind() != PotentialField::Kind::MPPlus &&
      ref_.kind() != PotentialField::Kind::MPFull)
    return;
  const MPLaw& law = ref_.law();
  aux_hx_ = 2e-3;
  aux_hy_ = 2e-3;
  aux_ytop_ = 0.2;
  aux_x0_ = law.a() - 0.25;
  const double x1 = law.b() + 0.35;
  aux_nx_ = static_cast<int>(std::ceil((x1 - aux_x0_) / aux_hx_)) + 1;
  aux_ny_ = static_cast<int>(std::round(aux_ytop_ / aux_hy_)) + 1;
  aux_u_.assign(static_cast<size_t>(aux_nx_) * aux_ny_, 0.0);
  const double phi = law.phi();
  const double a = law.a();
  const double b = law.b();
  run_rows(aux_ny_, opt_.build_threads, [&](int iy) {
    const double y = iy * aux_hy_;
    double* row = aux_u_.data() + static_cast<size_t>(iy) * aux_nx_;
    for (int ix = 0; ix < aux_nx_; ++ix) {
      const double x = aux_x0_ + ix * aux_hx_;
      if (iy == 0 && x >= a && x <= b)
        row[ix] = mp_potential_plus_value(phi, x);
      else
        row[ix] = mp_potential_plus_quadrature(phi, {x, y}, 1e-8);
    }
  });
  has_aux_ = true;
}

double DistFsEngine::plus_value(double x, double y) const {
  y = std::fabs(y);
  const MPLaw& law = ref_.law();
  if (has_aux_ && y <= aux_ytop_ && x >= aux_x0_ && x <= aux_x0_ + (aux_nx_ - 1) * aux_hx_) {
    const double fx = (x - aux_x0_) / aux_hx_;
    const double fy = y / aux_hy_;
    int bx = std::clamp(static_cast<int>(std::floor(fx)) - 1, 0, aux_nx_ - 4);
    int by = std::clamp(static_cast<int>(std::floor(fy)) - 1, 0, aux_ny_ - 4);
    const double tx = fx - (bx + 1);
    const double ty = fy - (by + 1);
    double col[4];
    for (int k = 0; k < 4; ++k) {
      const double* row = aux_u_.data() + static_cast<size_t>(by + k) * aux_nx_;
      col[k] = catmull_rom(row[bx], row[bx + 1], row[bx + 2], row[bx + 3], tx);
    }
    return catmull_rom(col[0], col[1], col[2], col[3], ty);
  }
  if (y == 0.0 && x >= law.a() && x <= law.b())
    return mp_potential_plus_value(law.phi(), x);
  return mp_potential_plus_quadrature(law.phi(), {x, y}, 1e-8);
}

double DistFsEngine::reference_potential(std::complex<double> z) const {
  switch (ref_.kind()) {
    case PotentialField::Kind::Empirical:
    case PotentialField::Kind::PointMass:
      return ref_.value(z);
    case PotentialField::Kind::MPPlus:
      return plus_value(z.real(), z.imag());
    case PotentialField::Kind::MPFull: {
      const MPLaw& law = ref_.law();
      const double d2 = z.real() * z.real() + z.imag() * z.imag();
      const double atom_part =
          d2 == 0.0 ? -std::numeric_limits<double>::infinity() : 0.5 * std::log(d2);
      return law.atom_mass() * atom_part + law.phi() * plus_value(z.real(), z.imag());
    }
  }
  return 0.0;
}

void DistFsEngine::build_base() {
  const int ns = opt_.n_s;
  cell_x_.assign(static_cast<size_t>(half_rows_) * ns, 0.0);
  cell_y_.assign(static_cast<size_t>(half_rows_) * ns, 0.0);
  ref_u_.assign(static_cast<size_t>(half_rows_) * ns, 0.0);
  const double dtheta = kTwoPi / opt_.n_theta;
  const double ds = 1.0 / ns;
  run_rows(half_rows_, opt_.build_threads, [&](int j) {
    const double theta = (j + 0.5) * dtheta;
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    for (int i = 0; i < ns; ++i) {
      const double s = (i + 0.5) * ds;
      const double r = std::sqrt(s / (1.0 - s));
      const size_t c = static_cast<size_t>(j) * ns + i;
      cell_x_[c] = r * ct;
      cell_y_[c] = r * st;
      ref_u_[c] = reference_potential({cell_x_[c], cell_y_[c]});
    }
  });
}

DistFsResult DistFsEngine::distance_detailed(const PotentialField& mu) const {
  const int ns = opt_.n_s;
  const double dtheta = kTwoPi / opt_.n_theta;
  const double ds = 1.0 / ns;
  const double cell_w = 1.0 / (static_cast<double>(opt_.n_theta) * ns);

  const double rad = std::max(mu.support_radius(), ref_.support_radius());
  const double trunc_r = opt_.truncation_factor * (1.0 + rad);
  const double s_cut = trunc_r * trunc_r / (1.0 + trunc_r * trunc_r);

  // atoms of both sides drive the refinement
  std::vector<double> atoms = mu.atom_locations();
  atoms.insert(atoms.end(), ref_.atom_locations().begin(), ref_.atom_locations().end());
  std::sort(atoms.begin(), atoms.end());
  const double rr = opt_.refine_radius;

  const int sub = opt_.refine_factor;
  const double wsub = cell_w / (sub * sub);

  double total = 0.0;
  double outer_max = 0.0;
  int i_max = ns - 1;
  while (i_max >= 0 && (i_max + 0.5) * ds > s_cut) --i_max;

  for (int j = 0; j < half_rows_; ++j) {
    const double theta_lo = j * dtheta;
    const double theta_hi = theta_lo + dtheta;
    const double sin_lo = std::sin(theta_lo);
    const double sin_hi = std::sin(theta_hi);
    const double cos_lo = std::cos(theta_lo);
    const double cos_hi = std::cos(theta_hi);
    const double band_sin = std::min(sin_lo, sin_hi);  // min of sin over the row
    double row_acc = 0.0;
    for (int i = 0; i <= i_max; ++i) {
      const size_t c = static_cast<size_t>(j) * ns + i;
      const double s_lo = i * ds;
      const double s_hi = s_lo + ds;
      const double r_lo = std::sqrt(s_lo / (1.0 - s_lo));
      const bool unbounded = s_hi >= 1.0;
      const double r_hi = unbounded ? 0.0 : std::sqrt(s_hi / (1.0 - s_hi));

      // Exact distance from each (real) atom to the polar cell; the minimum
      // over theta sits at the row edge facing the atom's half-axis.
      bool refine = false;
      if (r_lo * band_sin <= rr) {
        for (double xa : atoms) {
          double ct, st;
          if (xa >= 0.0) {
            ct = cos_lo;
            st = sin_lo;
          } else {
            ct = cos_hi;
            st = sin_hi;
          }
          const double proj = xa * ct;
          double rstar = std::max(proj, r_lo);
          if (!unbounded) rstar = std::min(rstar, r_hi);
          const double dx = xa - rstar * ct;
          const double dy = rstar * st;
          if (dx * dx + dy * dy <= rr * rr) {
            refine = true;
            break;
          }
        }
      }

      if (refine) {
        for (int jj = 0; jj < sub; ++jj) {
          const double th = theta_lo + (jj + 0.5) * dtheta / sub;
          const double ct = std::cos(th);
          const double st = std::sin(th);
          for (int ii = 0; ii < sub; ++ii) {
            const double ss = s_lo + (ii + 0.5) * ds / sub;
            const double r = std::sqrt(ss / (1.0 - ss));
            const std::complex<double> z{r * ct, r * st};
            const double d = std::fabs(mu.value(z) - reference_potential(z));
            if (std::isfinite(d)) row_acc += wsub * d;
          }
        }
      } else {
        const std::complex<double> z{cell_x_[c], cell_y_[c]};
        const double d = std::fabs(mu.value(z) - ref_u_[c]);
        if (std::isfinite(d)) {
          row_acc += cell_w * d;
          if (i == i_max) outer_max = std::max(outer_max, d);
        }
      }
    }
    total += 2.0 * row_acc;  // conjugate symmetry: lower half mirrors exactly
  }

  DistFsResult out;
  out.value = total;
  out.truncation_radius = trunc_r;
  out.truncation_bound = outer_max / (trunc_r * trunc_r);
  return out;
}

double DistFsEngine::distance(const PotentialField& mu) const {
  return distance_detailed(mu).value;
}

DistFsResult dist_fs_detailed(const PotentialField& mu, const PotentialField& nu,
                              DistFsOptions opt) {
  DistFsEngine engine(nu, opt);
  return engine.distance_detailed(mu);
}

double dist_fs(const PotentialField& mu, const PotentialField& nu, DistFsOptions opt) {
  return dist_fs_detailed(mu, nu, opt).value;
}

// ---------------------------------------------------------------------------
// CDF-based distances
// ---------------------------------------------------------------------------

namespace {

double integrate_abs_cdf_gap(const std::function<double(double)>& gap,
                             std::vector<double> events) {
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  double total = 0.0;
  for (size_t k = 0; k + 1 < events.size(); ++k) {
    const double lo = events[k];
    const double hi = events[k + 1];
    if (hi <= lo) continue;
    total += integrate_adaptive([&](double t) { return std::fabs(gap(t)); }, lo, hi,
                                1e-9)
                 .value;
  }
  return total;
}

void check_masses(double m1, double m2) {
  if (std::fabs(m1 - m2) > 1e-9)
    throw std::invalid_argument("wasserstein1 needs measures of equal total mass");
}

}  // namespace

double wasserstein1(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  check_masses(mu.total_mass(), nu.total_mass());
  // exact: both CDFs are step functions, constant between merged atom events
  std::vector<double> events;
  for (const auto& a : mu.atoms()) events.push_back(a.location);
  for (const auto& a : nu.atoms()) events.push_back(a.location);
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  double total = 0.0;
  for (size_t k = 0; k + 1 < events.size(); ++k) {
    const double t = events[k];
    total += std::fabs(mu.cdf(t) - nu.cdf(t)) * (events[k + 1] - t);
  }
  return total;
}

double wasserstein1(const EmpiricalMeasure& mu, const MPLaw& law, bool plus_part) {
  check_masses(mu.total_mass(), 1.0);
  std::vector<double> events{0.0, law.a(), law.b()};
  for (const auto& a : mu.atoms()) events.push_back(a.location);
  const double lo_atom = mu.atoms().front().location;
  events.push_back(std::min(lo_atom, 0.0) - 1.0);  // flat region guard
  auto gap = [&](double t) {
    const double f = plus_part ? law.cdf_plus(t) : law.cdf(t);
    return mu.cdf(t) - f;
  };
  return integrate_abs_cdf_gap(gap, std::move(events));
}

double wasserstein1(const MPLaw& law1, const MPLaw& law2) {
  std::vector<double> events{0.0, law1.a(), law1.b(), law2.a(), law2.b()};
  auto gap = [&](double t) { return law1.cdf(t) - law2.cdf(t); };
  return integrate_abs_cdf_gap(gap, std::move(events));
}

namespace {

double spread(const std::vector<double>& d) {
  double lo = 0.0, hi = 0.0;  // empty interval contributes 0
  for (double v : d) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

}  // namespace

double interval_discrepancy(const EmpiricalMeasure& mu, const MPLaw& law,
                            bool plus_part, int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("grid_points must be at least 2");
  auto law_cdf = [&](double t) { return plus_part ? law.cdf_plus(t) : law.cdf(t); };
  std::vector<double> cand;
  cand.reserve(2 * mu.atoms().size() + grid_points + 4);
  for (const auto& a : mu.atoms()) {
    // right and left limits at each atom; the law's CDF is continuous except
    // possibly at zero, which is handled below
    cand.push_back(mu.cdf(a.location) - law_cdf(a.location));
    cand.push_back(mu.cdf(a.location) - a.weight - law_cdf(a.location) +
                   (a.location == 0.0 && !plus_part ? law.atom_mass() : 0.0));
  }
  if (!plus_part && law.atom_mass() > 0.0) {
    cand.push_back(mu.cdf(0.0) - law_cdf(0.0));
    cand.push_back(mu.cdf(0.0) - mu.mass_at(0.0) - 0.0);  // just left of zero
  }
  for (int k = 0; k < grid_points; ++k) {
    const double t = law.a() + (law.b() - law.a()) * k / (grid_points - 1);
    cand.push_back(mu.cdf(t) - law_cdf(t));
  }
  return spread(cand);
}

double interval_discrepancy(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  std::vector<double> locs;
  for (const auto& a : mu.atoms()) locs.push_back(a.location);
  for (const auto& a : nu.atoms()) locs.push_back(a.location);
  std::sort(locs.begin(), locs.end());
  locs.erase(std::unique(locs.begin(), locs.end()), locs.end());
  std::vector<double> cand;
  cand.reserve(2 * locs.size());
  for (double t : locs) {
    cand.push_back(mu.cdf(t) - nu.cdf(t));
    cand.push_back(mu.cdf(t) - mu.mass_at(t) - (nu.cdf(t) - nu.mass_at(t)));
  }
  return spread(cand);
}

}  // namespace mpcov
