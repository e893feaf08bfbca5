#include "hypharm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hypharm {

double mink_inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  if (u.size() != v.size()) throw std::invalid_argument("mink_inner: dimension mismatch");
  if (u.size() < 2) throw std::invalid_argument("mink_inner: need at least 2 coordinates");
  double s = -u[0] * v[0];
  for (Eigen::Index i = 1; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

GeodesicLine line_through(const IdealPoint& y, const IdealPoint& z) {
  if ((y.dir - z.dir).norm() < kAlgebraicTol)
    throw std::invalid_argument("line_through: coincident ideal endpoints");
  GeodesicLine g;
  g.kind = GeodesicLine::Kind::line;
  g.e0 = y.dir;
  g.e1 = z.dir;
  return g;
}

GeodesicLine segment(const SpacePoint& x, const SpacePoint& y) {
  GeodesicLine g;
  g.kind = GeodesicLine::Kind::segment;
  g.e0 = x.x;
  g.e1 = y.x;
  return g;
}

GeodesicLine ray(const SpacePoint& x, const IdealPoint& z) {
  GeodesicLine g;
  g.kind = GeodesicLine::Kind::ray;
  g.e0 = x.x;
  g.e1 = z.dir;
  return g;
}

bool Isometry::valid() const {
  Mat4 j = Mat4::Identity();
  j(0, 0) = -1;
  Mat4 r = m.transpose() * j * m - j;
  return r.cwiseAbs().maxCoeff() < 1e-8 && m(0, 0) > 0;
}

Isometry Isometry::inverse() const {
  // M^-1 = J M^T J for Minkowski-orthogonal M.
  Mat4 j = Mat4::Identity();
  j(0, 0) = -1;
  Isometry out;
  out.m = j * m.transpose() * j;
  return out;
}

Isometry compose(const Isometry& g1, const Isometry& g2) {
  Isometry out;
  out.m = g1.m * g2.m;
  return out;
}

namespace {

// Compensated Minkowski inner product (fma two-products + Neumaier sum).
// Plain evaluation loses ~|u||v|*ulp absolutely, which wrecks exp/log
// roundtrips for points far from the model origin.
double mink_inner_acc(const Vec4& u, const Vec4& v) {
  double s = 0, comp = 0;
  auto add = [&](double x) {
    double t = s + x;
    comp += (std::abs(s) >= std::abs(x)) ? (s - t) + x : (x - t) + s;
    s = t;
  };
  auto addprod = [&](double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    add(p);
    add(err);
  };
  addprod(-u[0], v[0]);
  addprod(u[1], v[1]);
  addprod(u[2], v[2]);
  addprod(u[3], v[3]);
  return s + comp;
}

// Compensated Euclidean 4-dot and matrix-vector product.  The conjugation
// paths in exp/log cancel large products; plain accumulation there costs
// ~|m||v|*ulp absolute, which sinh(theta) then amplifies.
double dot4_acc(const Vec4& u, const Vec4& v) {
  double s = 0, comp = 0;
  auto add = [&](double x) {
    double t = s + x;
    comp += (std::abs(s) >= std::abs(x)) ? (s - t) + x : (x - t) + s;
    s = t;
  };
  auto addprod = [&](double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    add(p);
    add(err);
  };
  addprod(u[0], v[0]);
  addprod(u[1], v[1]);
  addprod(u[2], v[2]);
  addprod(u[3], v[3]);
  return s + comp;
}

Vec4 matvec_acc(const Mat4& m, const Vec4& v) {
  Vec4 out;
  for (int i = 0; i < 4; ++i) out[i] = dot4_acc(m.row(i).transpose(), v);
  return out;
}

// Pull a nearly-on-hyperboloid vector exactly onto <z,z> = -1 by a Newton
// step orthogonal (Euclidean) to the constraint surface.  Radial rescaling
// is the wrong move far out: the position ray is nearly tangent there.
Vec4 snap_to_hyperboloid(Vec4 z) {
  for (int it = 0; it < 2; ++it) {
    double eps = mink_inner_acc(z, z) + 1.0;
    if (std::abs(eps) < 1e-14) break;
    Vec4 grad(-z[0], z[1], z[2], z[3]);  // J z, half the Euclidean gradient
    z -= (eps / (2 * grad.squaredNorm())) * grad;
  }
  return z;
}

}  // namespace

double distance(const SpaceConfig& cfg, const SpacePoint& x, const SpacePoint& y) {
  double c = -mink_inner_acc(x.x, y.x);
  if (c < 1.0 - kAlgebraicTol) throw std::domain_error("distance: invalid points (-<x,y> < 1)");
  return std::acosh(std::max(1.0, c)) / cfg.a;
}

double chord_distance(const SpaceConfig& cfg, const SpacePoint& x, const SpacePoint& y) {
  Vec4 d = x.x - y.x;
  return std::sqrt(std::max(0.0, mink_inner(d, d))) / cfg.a;
}

namespace {

// exp at the origin: the tangent space is exactly the spatial coordinates,
// so the time-direction contamination of a stored tangent vector separates
// off cleanly instead of being amplified by cosh*sinh.
Vec4 exp_at_origin(Vec4 v0) {
  v0[0] = 0;
  double th = v0.norm();
  if (th < 1e-300) return Vec4(1, 0, 0, 0);
  Vec4 out = (std::sinh(th) / th) * v0;
  out[0] = std::cosh(th);
  return out;
}

constexpr double kConjugateX0 = 10.0;  // base farther than ~3 from o: conjugate

}  // namespace

SpacePoint exp_map(const SpaceConfig& cfg, const TangentVector& v) {
  (void)cfg;  // the unit-hyperboloid formula already encodes the a-scaling
  if (v.base.x[0] <= kConjugateX0) {
    Vec4 w = v.v + mink_inner_acc(v.base.x, v.v) * v.base.x;  // re-project to T_x
    double q = mink_inner_acc(w, w);
    double th = q > 0 ? std::sqrt(q) : 0.0;
    if (th < 1e-300) return v.base;
    Vec4 out = std::cosh(th) * v.base.x + (std::sinh(th) / th) * w;
    return SpacePoint(snap_to_hyperboloid(out));
  }
  Isometry t = carry_to_origin(cfg, v.base);
  Vec4 out0 = exp_at_origin(matvec_acc(t.m, v.v));
  return SpacePoint(snap_to_hyperboloid(matvec_acc(t.inverse().m, out0)));
}

TangentVector log_map(const SpaceConfig& cfg, const SpacePoint& x, const SpacePoint& y) {
  TangentVector out;
  out.base = x;
  if (x.x[0] <= kConjugateX0) {
    double c = std::max(1.0, -mink_inner_acc(x.x, y.x));
    Vec4 w = y.x - c * x.x;  // tangential part of y at x
    double d1 = std::acosh(c);
    // |w| = sinh(d1) exactly; computing it from <w,w> cancels badly far out.
    double wn = std::sinh(d1);
    out.v = (wn > 1e-300) ? Vec4((d1 / wn) * w) : Vec4(Vec4::Zero());
    return out;
  }
  Isometry t = carry_to_origin(cfg, x);
  Vec4 y0 = matvec_acc(t.m, y.x);
  double c = std::max(1.0, y0[0]);
  Vec4 w0 = y0;
  w0[0] = 0;  // tangential part at the origin is purely spatial
  double d1 = std::acosh(c);
  double wn = std::sinh(d1);
  out.v = (wn > 1e-300) ? Vec4(matvec_acc(t.inverse().m, Vec4((d1 / wn) * w0)))
                        : Vec4(Vec4::Zero());
  return out;
}

double tangent_norm(const SpaceConfig& cfg, const TangentVector& v) {
  return std::sqrt(std::max(0.0, mink_inner(v.v, v.v))) / cfg.a;
}

std::array<Vec4, 3> frame_at(const SpaceConfig& cfg, const SpacePoint& x) {
  // Project spatial basis vectors to T_x and Minkowski-Gram-Schmidt them.
  std::array<Vec4, 3> out{Vec4::Zero(), Vec4::Zero(), Vec4::Zero()};
  int k = 0;
  for (int i = 1; i <= 3 && k < cfg.n; ++i) {
    Vec4 e = Vec4::Zero();
    e[i] = 1;
    Vec4 v = e + mink_inner(e, x.x) * x.x;  // tangential projection
    for (int j = 0; j < k; ++j) v -= mink_inner(v, out[j]) * out[j] / mink_inner(out[j], out[j]);
    double q = mink_inner(v, v);
    if (q < 1e-12) continue;  // basis vector nearly parallel to a previous one
    out[k++] = v / std::sqrt(q);
  }
  if (k < cfg.n) throw std::runtime_error("frame_at: degenerate frame");
  // Scale to unit length in the curvature -a^2 metric (Minkowski norm a).
  for (int j = 0; j < cfg.n; ++j) out[j] *= cfg.a;
  return out;
}

namespace {

// Point on the bi-infinite line with ideal endpoints (u, v), parameterized as
// x(s) = (e^s u + e^-s v) / sqrt(-2<u,v>) in unit-hyperboloid arclength.
Vec4 line_point_raw(const Vec4& u, const Vec4& v, double s) {
  double c = -2.0 * mink_inner(u, v);
  return (std::exp(s) * u + std::exp(-s) * v) / std::sqrt(c);
}

}  // namespace

SpacePoint geodesic_point(const SpaceConfig& cfg, const GeodesicLine& g, double t) {
  double s1 = cfg.a * t;  // unit-hyperboloid arclength
  switch (g.kind) {
    case GeodesicLine::Kind::segment: {
      SpacePoint x(g.e0), y(g.e1);
      double d1 = std::acosh(std::max(1.0, -mink_inner(x.x, y.x)));
      if (s1 < -kAlgebraicTol || s1 > d1 + kAlgebraicTol)
        throw std::out_of_range("geodesic_point: segment parameter out of range");
      if (d1 < 1e-14) return x;
      double s = std::clamp(s1, 0.0, d1);
      Vec4 out = (std::sinh(d1 - s) * x.x + std::sinh(s) * y.x) / std::sinh(d1);
      return normalize_point(out);
    }
    case GeodesicLine::Kind::ray: {
      if (s1 < -kAlgebraicTol) throw std::out_of_range("geodesic_point: ray parameter negative");
      SpacePoint x(g.e0);
      // Unit tangent toward the ideal endpoint: w = z/(-<x,z>) - ... derived
      // from the null direction z: p(s) = cosh(s) x + sinh(s) w.
      Vec4 z = g.e1;
      double alpha = -mink_inner(x.x, z);
      Vec4 w = z / alpha - x.x;           // <x,w> = 0, <w,w> = 1
      w /= std::sqrt(std::max(1e-300, mink_inner(w, w)));
      double s = std::max(0.0, s1);
      return normalize_point(std::cosh(s) * x.x + std::sinh(s) * w);
    }
    case GeodesicLine::Kind::line: {
      // Declared origin: the point of the line nearest the model origin.
      const Vec4& u = g.e0;
      const Vec4& v = g.e1;
      double alpha = -mink_inner(Vec4(1, 0, 0, 0), u);
      double beta = -mink_inner(Vec4(1, 0, 0, 0), v);
      double s0 = 0.5 * std::log(beta / alpha);  // foot of the model origin
      return normalize_point(line_point_raw(u, v, s0 + s1));
    }
  }
  throw std::logic_error("geodesic_point: bad kind");
}

LineProjection dist_to_line(const SpaceConfig& cfg, const SpacePoint& p, const GeodesicLine& g) {
  LineProjection out;
  switch (g.kind) {
    case GeodesicLine::Kind::line: {
      const Vec4& u = g.e0;
      const Vec4& v = g.e1;
      double uv = mink_inner(u, v);
      if (uv > -1e-14) throw std::invalid_argument("dist_to_line: degenerate line");
      double alpha = -mink_inner(p.x, u);
      double beta = -mink_inner(p.x, v);
      double c = 2.0 * std::sqrt(alpha * beta / (-2.0 * uv));
      out.dist = std::acosh(std::max(1.0, c)) / cfg.a;
      out.foot = normalize_point(beta * u + alpha * v);
      return out;
    }
    case GeodesicLine::Kind::segment: {
      SpacePoint x(g.e0), y(g.e1);
      double d1 = std::acosh(std::max(1.0, -mink_inner(x.x, y.x)));
      if (d1 < 1e-14) {
        out.foot = x;
        out.dist = distance(cfg, p, x);
        return out;
      }
      double alpha = -mink_inner(p.x, x.x);
      double beta = -mink_inner(p.x, y.x);
      // minimize alpha*sinh(d1-s) + beta*sinh(s) over s in [0, d1]
      double ts = std::atanh(std::clamp((alpha * std::cosh(d1) - beta) / (alpha * std::sinh(d1)),
                                        -1.0 + 1e-15, 1.0 - 1e-15));
      double s = std::clamp(ts, 0.0, d1);
      out.foot = geodesic_point(cfg, g, s / cfg.a);
      out.dist = distance(cfg, p, out.foot);
      return out;
    }
    case GeodesicLine::Kind::ray: {
      SpacePoint x(g.e0);
      Vec4 z = g.e1;
      double ax = -mink_inner(p.x, x.x);
      Vec4 w = z / (-mink_inner(x.x, z)) - x.x;
      w /= std::sqrt(std::max(1e-300, mink_inner(w, w)));
      double gam = mink_inner(p.x, w);
      // minimize ax*cosh(s) - gam*sinh(s) over s >= 0
      double s = gam > 0 ? std::atanh(std::clamp(gam / ax, 0.0, 1.0 - 1e-15)) : 0.0;
      out.foot = normalize_point(std::cosh(s) * x.x + std::sinh(s) * w);
      out.dist = distance(cfg, p, out.foot);
      return out;
    }
  }
  throw std::logic_error("dist_to_line: bad kind");
}

double visual_distance(const SpaceConfig& cfg, const SpacePoint& base, const IdealPoint& y,
                       const IdealPoint& z) {
  if ((y.dir - z.dir).norm() < kAlgebraicTol)
    throw std::invalid_argument("visual_distance: coincident ideal points");
  (void)cfg;  // e^{-a * dist} with dist = arccosh(c)/a is a-independent
  double uv = mink_inner(y.dir, z.dir);
  double alpha = -mink_inner(base.x, y.dir);
  double beta = -mink_inner(base.x, z.dir);
  double c = std::max(1.0, 2.0 * std::sqrt(alpha * beta / (-2.0 * uv)));
  // e^{-arccosh(c)} = 1 / (c + sqrt(c^2-1))
  return 1.0 / (c + std::sqrt(std::max(0.0, c * c - 1.0)));
}

IdealPoint radial_projection(const SpaceConfig& cfg, const SpacePoint& x, const SpacePoint& p) {
  TangentVector v = log_map(cfg, x, p);
  double q = std::sqrt(std::max(0.0, mink_inner(v.v, v.v)));
  if (q < 1e-14) throw std::invalid_argument("radial_projection: p == x");
  return normalize_ideal(x.x + v.v / q);
}

Isometry translation(const SpaceConfig& cfg, const Eigen::Vector3d& u0, double t) {
  Eigen::Vector3d u = u0.normalized();
  double s = cfg.a * t;  // boost parameter in the unit-hyperboloid model
  Isometry out;
  Mat4& m = out.m;
  m = Mat4::Identity();
  m(0, 0) = std::cosh(s);
  for (int i = 0; i < 3; ++i) {
    m(0, i + 1) = std::sinh(s) * u[i];
    m(i + 1, 0) = std::sinh(s) * u[i];
    for (int j = 0; j < 3; ++j) m(i + 1, j + 1) = (i == j ? 1.0 : 0.0) + (std::cosh(s) - 1) * u[i] * u[j];
  }
  return out;
}

Isometry rotation(const SpaceConfig& cfg, const Eigen::Matrix3d& r) {
  (void)cfg;
  Isometry out;
  out.m = Mat4::Identity();
  out.m.block<3, 3>(1, 1) = r;
  return out;
}

namespace {

Eigen::Vector3d random_sphere_dir(const SpaceConfig& cfg, RandomStream& rng) {
  if (cfg.n == 2) {
    double phi = rng.uniform(0, 2 * std::numbers::pi);
    return Eigen::Vector3d(std::cos(phi), std::sin(phi), 0);
  }
  // uniform on S^2 via normalized gaussians
  for (;;) {
    Eigen::Vector3d v(rng.normal(), rng.normal(), rng.normal());
    double n = v.norm();
    if (n > 1e-8) return v / n;
  }
}

Eigen::Matrix3d random_rotation_matrix(const SpaceConfig& cfg, RandomStream& rng) {
  if (cfg.n == 2) {
    double phi = rng.uniform(0, 2 * std::numbers::pi);
    Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
    r(0, 0) = std::cos(phi);
    r(0, 1) = -std::sin(phi);
    r(1, 0) = std::sin(phi);
    r(1, 1) = std::cos(phi);
    return r;
  }
  // uniform SO(3) from a uniform unit quaternion
  double q0 = rng.normal(), q1 = rng.normal(), q2 = rng.normal(), q3 = rng.normal();
  double n = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
  q0 /= n;
  q1 /= n;
  q2 /= n;
  q3 /= n;
  Eigen::Quaterniond q(q0, q1, q2, q3);
  return q.toRotationMatrix();
}

}  // namespace

Isometry random_far_isometry(const SpaceConfig& cfg, RandomStream& rng, double t) {
  if (t < 0) throw std::invalid_argument("random_far_isometry: t must be >= 0");
  Isometry rot = rotation(cfg, random_rotation_matrix(cfg, rng));
  Isometry tra = translation(cfg, random_sphere_dir(cfg, rng), t);
  return compose(tra, rot);
}

Isometry carry_to_origin(const SpaceConfig& cfg, const SpacePoint& p) {
  double d = distance(cfg, origin(), p);
  if (d < 1e-15) return Isometry{};
  TangentVector v = log_map(cfg, origin(), p);
  Eigen::Vector3d u = v.v.tail<3>().normalized();
  return translation(cfg, u, -d);
}

double sphere_area(const SpaceConfig& cfg, double r) {
  double sa = std::sinh(cfg.a * r) / cfg.a;
  return cfg.n == 2 ? 2 * std::numbers::pi * sa : 4 * std::numbers::pi * sa * sa;
}

double ball_volume(const SpaceConfig& cfg, double r) {
  if (r <= 0) return 0;
  double a = cfg.a;
  if (cfg.n == 2) return 2 * std::numbers::pi * (std::cosh(a * r) - 1) / (a * a);
  return std::numbers::pi * (std::sinh(2 * a * r) - 2 * a * r) / (a * a * a);
}

namespace {

// Inverse CDF of the radial density sinh(a s)^{n-1} on [r0, r1].
double sample_radius(const SpaceConfig& cfg, RandomStream& rng, double r0, double r1) {
  double a = cfg.a;
  double u = rng.uniform();
  if (cfg.n == 2) {
    double c0 = std::cosh(a * r0), c1 = std::cosh(a * r1);
    return std::acosh(c0 + u * (c1 - c0)) / a;
  }
  // n = 3: CDF prop to sinh(2as)/(4a) - s/2; invert by bisection+Newton.
  auto cdf = [&](double s) { return std::sinh(2 * a * s) / (4 * a) - s / 2; };
  double target = cdf(r0) + u * (cdf(r1) - cdf(r0));
  double lo = r0, hi = r1;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    if (cdf(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Vec4 random_unit_tangent(const SpaceConfig& cfg, RandomStream& rng, const SpacePoint& x) {
  auto fr = frame_at(cfg, x);
  Eigen::Vector3d d = random_sphere_dir(cfg, rng);
  Vec4 v = Vec4::Zero();
  for (int i = 0; i < cfg.n; ++i) v += d[i] * fr[i];
  return v;  // frame vectors are a-unit, so v has metric norm 1
}

SpacePoint sample_annulus_uniform(const SpaceConfig& cfg, RandomStream& rng,
                                  const SpacePoint& center, double r0, double r1) {
  double r = sample_radius(cfg, rng, r0, r1);
  Vec4 dir = random_unit_tangent(cfg, rng, center);
  TangentVector v;
  v.base = center;
  v.v = (r * cfg.a) * dir;  // metric length r
  return exp_map(cfg, v);
}

std::vector<SpacePoint> sample_ball_uniform(const SpaceConfig& cfg, RandomStream& rng,
                                            const SpacePoint& center, double r, int count) {
  if (!(r > 0) || count < 1) throw std::invalid_argument("sample_ball_uniform: bad arguments");
  std::vector<SpacePoint> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(sample_annulus_uniform(cfg, rng, center, 0, r));
  return out;
}

double fd_laplacian_frame(const SpaceConfig& cfg, const ScalarField& f, const SpacePoint& x,
                          double h, const std::array<Vec4, 3>& frame) {
  if (!(h > 0) || h > 0.2) throw std::invalid_argument("fd_laplacian: h must be in (0, 0.2]");
  double fx = f(x);
  double acc = 0;
  for (int i = 0; i < cfg.n; ++i) {
    TangentVector vp{x, h * frame[i]};
    TangentVector vm{x, -h * frame[i]};
    acc += f(exp_map(cfg, vp)) + f(exp_map(cfg, vm)) - 2 * fx;
  }
  return acc / (h * h);
}

double fd_laplacian(const SpaceConfig& cfg, const ScalarField& f, const SpacePoint& x, double h) {
  return fd_laplacian_frame(cfg, f, x, h, frame_at(cfg, x));
}

double fd_gradient_norm(const SpaceConfig& cfg, const ScalarField& f, const SpacePoint& x,
                        double h) {
  auto fr = frame_at(cfg, x);
  double acc = 0;
  for (int i = 0; i < cfg.n; ++i) {
    TangentVector vp{x, h * fr[i]};
    TangentVector vm{x, -h * fr[i]};
    double d = (f(exp_map(cfg, vp)) - f(exp_map(cfg, vm))) / (2 * h);
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace hypharm
