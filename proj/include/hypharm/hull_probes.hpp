#pragma once

#include "hypharm/fit.hpp"
#include "hypharm/hull.hpp"

namespace hypharm {

// Decay of the retraction's pointwise contraction ratio with shell distance.
struct LipschitzProfile {
  std::vector<double> shells;      // s values
  std::vector<double> max_ratios;  // per shell: max dist(r x, r y)/dist(x, y)
  double slope = 0;                // of log max_ratio versus s
  double slope_residual = 0;
};

// For each s: point pairs at hull-distance in [s, s+1/2] with separation at
// most pair_gap, whose connecting geodesic stays outside N_s (audited,
// violators resampled).  Throws when the resampling budget is exhausted.
LipschitzProfile lipschitz_profile(const GeodesicHull& k, RandomStream& rng,
                                   const std::vector<double>& shells, int pairs_per_shell,
                                   double pair_gap);

// Radial-cone geometry probe: points near the cone over S but outside B(x,R)
// project radially to directions visually close to S; the max visual gap
// must scale like e^{-aR}.  Also measures the hull/cone padding diagnostic.
struct ConeReport {
  std::vector<double> r_grid;
  std::vector<double> max_visual_gap;  // per R
  double slope = 0;                    // of log max gap versus R
  double pad_estimate = 0;             // max dist from cone sample points to the hull
};

ConeReport cone_inclusion_probe(const BoundarySet& s, const GeodesicHull& k, const SpacePoint& x,
                                const std::vector<double>& r_grid, int samples, RandomStream& rng,
                                double c_pad = 1.0);

// Monte Carlo volume of N_d(hull) per unit annulus around x, with the
// exponential growth rate fitted on the per-annulus volumes.
struct VolumeProfile {
  std::vector<double> rho_grid;  // annulus [rho, rho+1)
  double d = 0;
  std::vector<long long> counts;
  std::vector<long long> samples;
  std::vector<double> vol_annulus;      // estimates
  std::vector<double> vol_stderr;
  std::vector<double> vol_cumulative;   // running sums
  double fitted_rate = 0;               // growth rate of vol_annulus over [2, rho_max]
  double fitted_stderr = 0;
  bool has_empty_annuli = false;        // zero-hit annuli excluded from the fit
};

VolumeProfile volume_profile(const GeodesicHull& k, const SpacePoint& x, double d, double rho_max,
                             int samples_per_shell, RandomStream& rng);

}  // namespace hypharm
