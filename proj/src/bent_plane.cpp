#include "hypharm/bent_plane.hpp"

#include <cmath>
#include <numbers>

namespace hypharm {

namespace {

const SpaceConfig kH3{3, 1.0};

Vec4 rotate23(const Vec4& v, double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  return Vec4(v[0], v[1], c * v[2] - s * v[3], s * v[2] + c * v[3]);
}

// Project onto the totally geodesic plane x3 = 0.
SpacePoint project_to_plane(const SpacePoint& y) {
  Vec4 v = y.x;
  v[3] = 0;
  return normalize_point(v);  // v stays timelike: -y0^2 + y1^2 + y2^2 = -1 - y3^2
}

// Project onto the x1-axis geodesic.
SpacePoint project_to_axis(const SpacePoint& y) {
  Vec4 v(y.x[0], y.x[1], 0, 0);
  return normalize_point(v);
}

// Foot of y on the closed half-plane {x3 = 0, sign * x2 >= 0}.
SpacePoint project_to_halfplane(const SpacePoint& y, double sign) {
  SpacePoint p = project_to_plane(y);
  if (sign * p.x[2] >= 0) return p;
  return project_to_axis(y);
}

}  // namespace

GeodesicLine bent_axis() {
  return line_through(make_ideal({1, 0, 0}), make_ideal({-1, 0, 0}));
}

SpacePoint bent_embed(const BentPlaneFamily& fam, const SpacePoint& x) {
  fam.validate();
  if (std::abs(x.x[3]) > 1e-9) throw std::invalid_argument("bent_embed: input not in the H^2 slice");
  if (x.x[2] <= 0) return x;
  return SpacePoint(rotate23(x.x, fam.theta));
}

SpacePoint bent_unfold(const BentPlaneFamily& fam, const SpacePoint& y) {
  fam.validate();
  SpacePoint foot_lo = project_to_halfplane(y, -1.0);
  SpacePoint yu(rotate23(y.x, -fam.theta));  // into the frame of the rotated half
  SpacePoint foot_up = project_to_halfplane(yu, +1.0);
  double dlo = -mink_inner(y.x, foot_lo.x);   // cosh of distance: monotone
  double dup = -mink_inner(yu.x, foot_up.x);
  SpacePoint out = (dlo <= dup) ? foot_lo : foot_up;
  out.x[3] = 0;  // exact slice membership
  return normalize_point(out.x);
}

BoundarySet bent_boundary(const BentPlaneFamily& fam, int m) {
  fam.validate();
  if (m < 4 || m % 2 != 0) throw std::invalid_argument("bent_boundary: m must be even and >= 4");
  BoundarySet s;
  s.n = 3;
  s.generator = {"bent_plane", {{"theta", fam.theta}, {"m", static_cast<double>(m)}}};
  int half = m / 2;
  // fixed arc (x2 <= 0): phi in [pi, 2*pi], includes both axis endpoints
  for (int k = 0; k <= half; ++k) {
    double phi = std::numbers::pi + std::numbers::pi * k / half;
    s.points.push_back(make_ideal({std::cos(phi), std::sin(phi), 0}));
  }
  // rotated arc (x2 >= 0): phi in (0, pi), axis endpoints excluded
  for (int k = 1; k < half; ++k) {
    double phi = std::numbers::pi * k / half;
    double sp = std::sin(phi);
    s.points.push_back(
        make_ideal({std::cos(phi), sp * std::cos(fam.theta), sp * std::sin(fam.theta)}));
  }
  s.resolution = compute_resolution(s);
  return s;
}

}  // namespace hypharm
