#pragma once

#include "hypharm/rng.hpp"
#include "hypharm/space.hpp"

#include <array>
#include <functional>
#include <vector>

namespace hypharm {

using ScalarField = std::function<double(const SpacePoint&)>;

// --- metric --------------------------------------------------------------

double distance(const SpaceConfig& cfg, const SpacePoint& x, const SpacePoint& y);

// Minkowski chord norm |x - y| / a: agrees with distance() to third order
// near zero and resolves separations below the ~1e-8 floor of acosh.
double chord_distance(const SpaceConfig& cfg, const SpacePoint& x, const SpacePoint& y);

SpacePoint exp_map(const SpaceConfig& cfg, const TangentVector& v);
TangentVector log_map(const SpaceConfig& cfg, const SpacePoint& x, const SpacePoint& y);

// Norm of a tangent vector in the curvature -a^2 metric.
double tangent_norm(const SpaceConfig& cfg, const TangentVector& v);

// Orthonormal tangent frame at x (n vectors, deterministic construction).
std::array<Vec4, 3> frame_at(const SpaceConfig& cfg, const SpacePoint& x);

// --- geodesics -----------------------------------------------------------

// Arclength parameterization.  Segments/rays start at their start point;
// bi-infinite lines start at the point nearest the model origin, oriented
// from e0 toward e1.
SpacePoint geodesic_point(const SpaceConfig& cfg, const GeodesicLine& g, double t);

struct LineProjection {
  double dist = 0;
  SpacePoint foot;
};

LineProjection dist_to_line(const SpaceConfig& cfg, const SpacePoint& p, const GeodesicLine& g);

// exp(-a * dist(base, [y,z])); symmetric in y,z, values in (0,1].
double visual_distance(const SpaceConfig& cfg, const SpacePoint& base, const IdealPoint& y,
                       const IdealPoint& z);

// Ideal endpoint of the ray from x through p (p != x).
IdealPoint radial_projection(const SpaceConfig& cfg, const SpacePoint& x, const SpacePoint& p);

// --- isometries ----------------------------------------------------------

// Translation by distance t along the direction u (unit spatial vector),
// mapping the origin to a point at distance t.
Isometry translation(const SpaceConfig& cfg, const Eigen::Vector3d& u, double t);

// Rotation fixing the origin (block acts on spatial coordinates only).
Isometry rotation(const SpaceConfig& cfg, const Eigen::Matrix3d& r);

// Uniform random rotation fixing o composed with a translation by distance t
// along a uniformly random axis through o.
Isometry random_far_isometry(const SpaceConfig& cfg, RandomStream& rng, double t);

// Isometry carrying p to the origin (pure translation along [o,p]).
Isometry carry_to_origin(const SpaceConfig& cfg, const SpacePoint& p);

// --- volume and sampling -------------------------------------------------

double sphere_area(const SpaceConfig& cfg, double r);   // area of metric sphere
double ball_volume(const SpaceConfig& cfg, double r);

std::vector<SpacePoint> sample_ball_uniform(const SpaceConfig& cfg, RandomStream& rng,
                                            const SpacePoint& center, double r, int count);

// Uniform point on the annulus B(center, r1) \ B(center, r0).
SpacePoint sample_annulus_uniform(const SpaceConfig& cfg, RandomStream& rng,
                                  const SpacePoint& center, double r0, double r1);

// Uniform unit tangent direction at x.
Vec4 random_unit_tangent(const SpaceConfig& cfg, RandomStream& rng, const SpacePoint& x);

// --- finite differences --------------------------------------------------

// Central second-difference Laplacian over an orthonormal frame; O(h^2) for
// smooth fields (normal coordinates kill first-order metric terms at x).
double fd_laplacian(const SpaceConfig& cfg, const ScalarField& f, const SpacePoint& x, double h);

// Same stencil with a caller-chosen frame (frame vectors must be orthonormal).
double fd_laplacian_frame(const SpaceConfig& cfg, const ScalarField& f, const SpacePoint& x,
                          double h, const std::array<Vec4, 3>& frame);

double fd_gradient_norm(const SpaceConfig& cfg, const ScalarField& f, const SpacePoint& x,
                        double h);

}  // namespace hypharm
