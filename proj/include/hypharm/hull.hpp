#pragma once

#include "hypharm/boundary.hpp"
#include "hypharm/geometry.hpp"

#include <string>
#include <vector>

namespace hypharm {

// Finite family of complete geodesics with both ideal endpoints in a
// boundary sample: the computable surrogate for the convex hull, good up to
// a uniform additive constant.  Query data is laid out struct-of-arrays so
// distance scans vectorize; the scanned quantity is cosh^2 of the distance,
// which needs no sqrt or acosh per line.
struct GeodesicHull {
  SpaceConfig cfg{3, 1.0};
  std::vector<GeodesicLine> lines;
  std::string pair_policy = "all";
  double pad = 0;  // measured slack between cone/hull logic, see cone probe

  // query cache (built by build_cache)
  std::vector<double> u0, u1, u2, u3;
  std::vector<double> v0, v1, v2, v3;
  std::vector<double> inv2uv;

  void build_cache();
  size_t size() const { return lines.size(); }
};

struct HullProjection {
  double dist = 0;
  SpacePoint foot;
  int line_index = -1;
};

// Selects up to budget endpoint pairs: all pairs when they fit the budget,
// otherwise stratified sampling (1/4 near-diameter pairs, 3/4 uniform).
GeodesicHull build_hull(const BoundarySet& s, const std::string& pair_policy, int budget,
                        RandomStream& rng);

HullProjection dist_to_hull(const SpacePoint& p, const GeodesicHull& k);
SpacePoint retract(const SpacePoint& p, const GeodesicHull& k);

// Hot kernels. cosh_a_d = cosh(a * d).
double hull_min_cosh(const GeodesicHull& k, const Vec4& p, int* argmin = nullptr);
bool hull_within(const GeodesicHull& k, const Vec4& p, double cosh_a_d);

}  // namespace hypharm
