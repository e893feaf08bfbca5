#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

// Core types for the hyperboloid model of H^n (n = 2 or 3), curvature -a^2.
//
// All points live on the unit hyperboloid {<x,x> = -1, x0 > 0} of Minkowski
// space R^{1,3} with signature (-,+,+,+).  For n = 2 the last coordinate is
// pinned to zero, so H^2 is the totally geodesic slice x3 = 0 of the same
// ambient space.  The metric of curvature -a^2 is the induced one scaled by
// 1/a^2: distances are arccosh(-<x,y>)/a and unit tangent vectors have
// Minkowski norm a.

namespace hypharm {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

inline constexpr double kAlgebraicTol = 1e-9;   // algebraic identities
inline constexpr double kQuadratureTol = 1e-6;  // iterative / quadrature results

struct SpaceConfig {
  int n = 2;       // dimension, 2 or 3
  double a = 1.0;  // curvature scale: sectional curvature is -a^2

  void validate() const {
    if (n != 2 && n != 3) throw std::invalid_argument("SpaceConfig: n must be 2 or 3");
    if (!(a > 0)) throw std::invalid_argument("SpaceConfig: a must be positive");
  }
};

// Minkowski inner product -u0*v0 + u1*v1 + u2*v2 + u3*v3.
inline double mink_inner(const Vec4& u, const Vec4& v) {
  return -u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3];
}

// Variable-length variant; the fixed-size overload is the hot path.
double mink_inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

struct SpacePoint {
  Vec4 x = Vec4(1, 0, 0, 0);

  SpacePoint() = default;
  explicit SpacePoint(const Vec4& v) : x(v) {}

  bool valid(int n) const {
    if (std::abs(mink_inner(x, x) + 1.0) > kAlgebraicTol) return false;
    if (!(x[0] > 0)) return false;
    if (n == 2 && std::abs(x[3]) > kAlgebraicTol) return false;
    return true;
  }
};

inline SpacePoint origin() { return SpacePoint(Vec4(1, 0, 0, 0)); }

// Rescale a timelike vector onto the hyperboloid sheet x0 > 0.
inline SpacePoint normalize_point(const Vec4& v) {
  double q = -mink_inner(v, v);
  if (!(q > 0)) throw std::domain_error("normalize_point: vector is not timelike");
  Vec4 w = v / std::sqrt(q);
  if (w[0] < 0) w = -w;
  return SpacePoint(w);
}

struct TangentVector {
  SpacePoint base;
  Vec4 v = Vec4::Zero();

  bool valid() const { return std::abs(mink_inner(base.x, v)) < kAlgebraicTol; }
};

// Boundary-at-infinity point: a future null direction, normalized so the
// first coordinate is 1.  Its spatial part is then a Euclidean unit vector.
struct IdealPoint {
  Vec4 dir = Vec4(1, 1, 0, 0);

  IdealPoint() = default;
  explicit IdealPoint(const Vec4& d) : dir(d) {}

  Eigen::Vector3d spatial() const { return dir.tail<3>(); }

  bool valid(int n) const {
    if (std::abs(mink_inner(dir, dir)) > kAlgebraicTol) return false;
    if (std::abs(dir[0] - 1.0) > kAlgebraicTol) return false;
    if (n == 2 && std::abs(dir[3]) > kAlgebraicTol) return false;
    return true;
  }
};

inline IdealPoint make_ideal(const Eigen::Vector3d& unit_dir) {
  Eigen::Vector3d u = unit_dir.normalized();
  return IdealPoint(Vec4(1, u[0], u[1], u[2]));
}

inline IdealPoint normalize_ideal(const Vec4& d) {
  if (!(d[0] > 0)) throw std::domain_error("normalize_ideal: not future-pointing");
  return IdealPoint(d / d[0]);
}

struct GeodesicLine {
  enum class Kind { line, ray, segment };
  Kind kind = Kind::line;
  Vec4 e0 = Vec4::Zero();  // ideal dir (line), start point (ray/segment)
  Vec4 e1 = Vec4::Zero();  // ideal dir (line/ray), end point (segment)
};

GeodesicLine line_through(const IdealPoint& y, const IdealPoint& z);
GeodesicLine segment(const SpacePoint& x, const SpacePoint& y);
GeodesicLine ray(const SpacePoint& x, const IdealPoint& z);

// Time-orientation preserving Minkowski-orthogonal 4x4 matrix.
struct Isometry {
  Mat4 m = Mat4::Identity();

  SpacePoint apply(const SpacePoint& p) const { return SpacePoint(m * p.x); }
  IdealPoint apply(const IdealPoint& p) const { return normalize_ideal(m * p.dir); }
  Vec4 apply_vec(const Vec4& v) const { return m * v; }
  Isometry inverse() const;

  bool valid() const;
};

Isometry compose(const Isometry& g1, const Isometry& g2);  // g1 after g2

}  // namespace hypharm
