#pragma once

#include "hypharm/fit.hpp"
#include "hypharm/geometry.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hypharm {

struct GeneratorTag {
  std::string name = "none";
  std::vector<std::pair<std::string, double>> params;
};

// Finite sample of a boundary set S in the visual sphere, with a declared
// resolution (max nearest-neighbor gap in the visual metric at the origin).
// Consumers must refuse scales below the resolution.
struct BoundarySet {
  int n = 3;
  std::vector<IdealPoint> points;
  double resolution = 0;
  GeneratorTag generator;
};

struct DimensionEstimate {
  double beta = 0;
  double eps_min = 0, eps_max = 0;  // fit window
  double residual = 0;
  int scales = 0;
  std::vector<std::pair<double, double>> per_gamma;  // (translation length, fitted slope)
};

// m equally spaced ideal points on the equatorial circle of the visual
// sphere of H^3 (the boundary of the totally geodesic plane x3 = 0).
BoundarySet gen_round_circle(int m);

// Endpoint sample of the middle-interval Cantor set with contraction ratio
// lambda in (0, 1/2) on a fixed boundary arc of 1 radian; 2^depth points.
BoundarySet gen_cantor(double ratio, int depth, int n);

// Midpoint-displacement quasicircle on the visual sphere of H^3: starts from
// gen_round_circle(4), inserts spherical midpoints displaced orthogonally
// (within the sphere, consistent side) by roughness * current gap.
// 4 * 2^depth points; rejects self-intersecting output.
BoundarySet gen_snowflake(double roughness, int depth);

// Max over sample points of the visual-metric nearest-neighbor gap at base o.
double compute_resolution(const BoundarySet& s);

// Max pairwise visual distance at base o (exact, bucketed).
double visual_diameter(const BoundarySet& s);

// Size of a greedy eps-net of the sample under visual_distance(base, .,.).
// Greedy is a 2-approximation of the optimal cover; refuses eps <= resolution.
int covering_number(const BoundarySet& s, double eps, const SpacePoint& base);

// Least-squares slope of log N(eps) versus log(1/eps) over dyadic scales
// between resolution and diameter; requires at least 6 usable scales.
DimensionEstimate box_dimension(const BoundarySet& s, const SpacePoint& base);

// Empirical invariant upper Minkowski dimension: max fitted slope over
// sampled isometries gamma = random_far_isometry(t), t <= t_max, with the
// identity always in the trial set.
DimensionEstimate invariant_dimension(const BoundarySet& s, RandomStream& rng, int trials,
                                      double t_max);

BoundarySet transform_set(const BoundarySet& s, const Isometry& g);

}  // namespace hypharm
