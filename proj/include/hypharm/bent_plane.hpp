#pragma once

#include "hypharm/boundary.hpp"
#include "hypharm/geometry.hpp"

namespace hypharm {

// H^2 bent into H^3 along the x1-axis geodesic: the half-plane x2 >= 0 is
// rotated by theta about the axis, the half-plane x2 <= 0 stays put.  The
// embedding is an isometry on each closed half-plane and continuous across
// the axis; its boundary is a piecewise-circular quasicircle.
struct BentPlaneFamily {
  double theta = 0;  // bending angle in [0, pi/2)

  void validate() const {
    if (!(theta >= 0 && theta < 1.5707963267948966))
      throw std::invalid_argument("BentPlaneFamily: theta outside [0, pi/2)");
  }
};

GeodesicLine bent_axis();

// x must lie in the H^2 slice (x3 = 0).
SpacePoint bent_embed(const BentPlaneFamily& fam, const SpacePoint& x);

// Nearest-point projection onto the bent surface followed by unfolding the
// half-planes back into the H^2 slice.  Points equidistant from both closed
// half-planes resolve to the fixed (x2 <= 0) one.
SpacePoint bent_unfold(const BentPlaneFamily& fam, const SpacePoint& y);

// m boundary samples: the two ideal arcs of the bent surface, including the
// two axis endpoints shared by both arcs.
BoundarySet bent_boundary(const BentPlaneFamily& fam, int m);

}  // namespace hypharm
