#pragma once

#include <complex>
#include <vector>

#include "mpcov/measure.hpp"
#include "mpcov/mp_law.hpp"
#include "mpcov/potential.hpp"

namespace mpcov {

struct DistFsOptions {
  int n_theta = 256;             // angular cells over the full circle (even)
  int n_s = 192;                 // radial cells, uniform in s = |z|^2/(1+|z|^2)
  double refine_radius = 0.05;   // atom disks that trigger cell subdivision
  int refine_factor = 4;         // subdivision per axis inside flagged cells
  double truncation_factor = 16.0;  // R = factor * (1 + max support radius)
  int build_threads = 0;         // threads for reference caches; 0 = hardware
};

struct DistFsResult {
  double value = 0.0;
  double truncation_radius = 0.0;
  double truncation_bound = 0.0;  // (1/R^2) x sup of |u - u'| near the rim
};

/// Potential-distance integrator with a fixed grid and a cached reference
/// side. The grid is a midpoint rule in (theta, s) where the Fubini-Study
/// measure is uniform; cells meeting an atom disk are subdivided. Building an
/// engine precomputes the reference potential on the grid (and, for law
/// references, on a fine near-support table), so many measures can be
/// compared against the same reference cheaply. All inputs live on the real
/// line, so only the upper half-plane is integrated (doubled).
class DistFsEngine {
 public:
  explicit DistFsEngine(PotentialField reference, DistFsOptions opt = {});

  const DistFsOptions& options() const { return opt_; }

  DistFsResult distance_detailed(const PotentialField& mu) const;
  double distance(const PotentialField& mu) const;

  /// Reference potential as the engine sees it (cache-accelerated); exposed
  /// so tests can compare it against the pure quadrature path.
  double reference_potential(std::complex<double> z) const;

 private:
  void build_aux();
  void build_base();
  double plus_value(double x, double y) const;

  PotentialField ref_;
  DistFsOptions opt_;

  // base grid, upper half-plane: cell (j, i) at theta_j = 2 pi (j+1/2)/n_theta,
  // s_i = (i+1/2)/n_s, linear index j * n_s + i
  int half_rows_ = 0;
  std::vector<double> cell_x_, cell_y_;    // centers
  std::vector<double> ref_u_;              // reference potential at centers

  // near-support table of the plus-part potential for law references
  bool has_aux_ = false;
  double aux_x0_ = 0, aux_hx_ = 0, aux_hy_ = 0, aux_ytop_ = 0;
  int aux_nx_ = 0, aux_ny_ = 0;
  std::vector<double> aux_u_;  // row-major [iy][ix]
};

/// One-shot distance; builds an engine on nu internally.
DistFsResult dist_fs_detailed(const PotentialField& mu, const PotentialField& nu,
                              DistFsOptions opt = {});
double dist_fs(const PotentialField& mu, const PotentialField& nu,
               DistFsOptions opt = {});

/// L1 distance between CDFs (Kantorovich-Wasserstein on the line). Total
/// masses must agree. The atomic-atomic case is exact; cases against a law
/// integrate |F - F'| adaptively with splits at atoms and support edges.
double wasserstein1(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu);
double wasserstein1(const EmpiricalMeasure& mu, const MPLaw& law, bool plus_part = false);
double wasserstein1(const MPLaw& law1, const MPLaw& law2);

/// sup over intervals I of |mu(I) - nu(I)| = spread of the signed CDF
/// difference over atom left/right limits plus a refinement grid.
double interval_discrepancy(const EmpiricalMeasure& mu, const MPLaw& law,
                            bool plus_part = false, int grid_points = 2048);
double interval_discrepancy(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu);

}  // namespace mpcov
