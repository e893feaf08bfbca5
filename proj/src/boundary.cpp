#include "hypharm/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace hypharm {

namespace {

using V3 = Eigen::Vector3d;

double angle_between(const V3& u, const V3& v) {
  double c = std::clamp(u.dot(v), -1.0, 1.0);
  return std::acos(c);
}

// visual distance at base o is tan(angle/4): monotone in the sphere angle
double vis_from_angle(double ang) { return std::tan(ang / 4.0); }
double angle_from_vis(double vis) { return 4.0 * std::atan(vis); }

// Spatial-hash buckets over unit vectors, keyed by chordal cells.
struct SphereBuckets {
  double cell;
  std::map<std::tuple<int, int, int>, std::vector<int>> cells;

  explicit SphereBuckets(const std::vector<V3>& pts, double cell_size) : cell(cell_size) {
    for (size_t i = 0; i < pts.size(); ++i) cells[key(pts[i])].push_back(static_cast<int>(i));
  }

  std::tuple<int, int, int> key(const V3& p) const {
    return {static_cast<int>(std::floor(p[0] / cell)), static_cast<int>(std::floor(p[1] / cell)),
            static_cast<int>(std::floor(p[2] / cell))};
  }

  template <class F>
  void for_neighbors(const V3& p, const F& fn) const {
    auto [kx, ky, kz] = key(p);
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dz = -1; dz <= 1; ++dz) {
          auto it = cells.find({kx + dx, ky + dy, kz + dz});
          if (it == cells.end()) continue;
          for (int i : it->second) fn(i);
        }
  }
};

std::vector<V3> spatial_dirs(const BoundarySet& s) {
  std::vector<V3> out;
  out.reserve(s.points.size());
  for (const auto& p : s.points) out.push_back(p.spatial());
  return out;
}

BoundarySet finalize(BoundarySet s) {
  s.resolution = compute_resolution(s);
  return s;
}

}  // namespace

BoundarySet transform_set(const BoundarySet& s, const Isometry& g) {
  BoundarySet out = s;
  for (auto& p : out.points) p = g.apply(p);
  out.resolution = compute_resolution(out);
  return out;
}

BoundarySet gen_round_circle(int m) {
  if (m < 3)
    throw std::invalid_argument(
        "gen_round_circle: m >= 3 required (and the generator needs the 2-sphere boundary, n = 3)");
  BoundarySet s;
  s.n = 3;
  s.generator = {"round_circle", {{"m", static_cast<double>(m)}}};
  for (int k = 0; k < m; ++k) {
    double phi = 2 * std::numbers::pi * k / m;
    s.points.push_back(make_ideal({std::cos(phi), std::sin(phi), 0}));
  }
  return finalize(std::move(s));
}

BoundarySet gen_cantor(double ratio, int depth, int n) {
  if (!(ratio > 0 && ratio < 0.5)) throw std::invalid_argument("gen_cantor: ratio outside (0, 1/2)");
  if (depth < 1) throw std::invalid_argument("gen_cantor: depth must be >= 1");
  if (n != 2 && n != 3) throw std::invalid_argument("gen_cantor: n must be 2 or 3");
  // Left endpoints of the 2^depth level-depth intervals on the arc [0, 1] rad.
  std::vector<double> ts{0.0};
  double scale = 1.0;
  for (int k = 0; k < depth; ++k) {
    size_t sz = ts.size();
    double offset = (1.0 - ratio) * scale;
    for (size_t i = 0; i < sz; ++i) ts.push_back(ts[i] + offset);
    scale *= ratio;
  }
  std::sort(ts.begin(), ts.end());
  BoundarySet s;
  s.n = n;
  s.generator = {"cantor",
                 {{"ratio", ratio}, {"depth", static_cast<double>(depth)}, {"n", static_cast<double>(n)}}};
  for (double t : ts) s.points.push_back(make_ideal({std::cos(t), std::sin(t), 0}));
  return finalize(std::move(s));
}

namespace {

// Crossing test for short great-circle arcs (a,b), (c,d) on the sphere.
bool arcs_cross(const V3& a, const V3& b, const V3& c, const V3& d) {
  if ((a + b).dot(c + d) <= 0) return false;  // short arcs in opposite hemispheres
  auto side = [](const V3& u, const V3& v, const V3& p) { return u.cross(v).dot(p); };
  double s1 = side(a, b, c), s2 = side(a, b, d);
  double s3 = side(c, d, a), s4 = side(c, d, b);
  return s1 * s2 < 0 && s3 * s4 < 0;
}

}  // namespace

BoundarySet gen_snowflake(double roughness, int depth) {
  if (!(roughness >= 0 && roughness < 0.5))
    throw std::invalid_argument("gen_snowflake: roughness outside [0, 0.5)");
  if (depth < 0) throw std::invalid_argument("gen_snowflake: negative depth");
  std::vector<V3> pts;
  for (int k = 0; k < 4; ++k) {
    double phi = 2 * std::numbers::pi * k / 4;
    pts.emplace_back(std::cos(phi), std::sin(phi), 0);
  }
  for (int level = 0; level < depth; ++level) {
    std::vector<V3> next;
    next.reserve(pts.size() * 2);
    for (size_t i = 0; i < pts.size(); ++i) {
      const V3& u = pts[i];
      const V3& v = pts[(i + 1) % pts.size()];
      next.push_back(u);
      double gap = angle_between(u, v);
      V3 mid = (u + v).normalized();
      V3 axis = u.cross(v).normalized();
      // Alternating displacement side: the same-side variant accumulates
      // rotation and self-intersects well below roughness 1/2.
      double delta = roughness * gap * (i % 2 == 0 ? 1.0 : -1.0);
      next.push_back((std::cos(delta) * mid + std::sin(delta) * axis).normalized());
    }
    pts.swap(next);
  }

  // segment-crossing audit over the closed polyline
  size_t nseg = pts.size();
  double max_chord = 0;
  for (size_t i = 0; i < nseg; ++i)
    max_chord = std::max(max_chord, (pts[(i + 1) % nseg] - pts[i]).norm());
  std::vector<V3> mids(nseg);
  for (size_t i = 0; i < nseg; ++i) mids[i] = (pts[i] + pts[(i + 1) % nseg]).normalized();
  SphereBuckets buckets(mids, std::max(1e-6, 2.2 * max_chord));
  for (size_t i = 0; i < nseg; ++i) {
    bool bad = false;
    buckets.for_neighbors(mids[i], [&](int j) {
      size_t sj = static_cast<size_t>(j);
      if (sj <= i) return;                                      // each unordered pair once
      if (sj == (i + 1) % nseg || (sj + 1) % nseg == i) return;  // adjacent arcs share a point
      if (arcs_cross(pts[i], pts[(i + 1) % nseg], pts[sj], pts[(sj + 1) % nseg])) bad = true;
    });
    if (bad)
      throw std::runtime_error("gen_snowflake: self-intersection at depth " +
                               std::to_string(depth) + ", roughness " + std::to_string(roughness));
  }

  BoundarySet s;
  s.n = 3;
  s.generator = {"snowflake", {{"roughness", roughness}, {"depth", static_cast<double>(depth)}}};
  for (const auto& p : pts) s.points.push_back(make_ideal(p));
  return finalize(std::move(s));
}

double compute_resolution(const BoundarySet& s) {
  auto dirs = spatial_dirs(s);
  size_t n = dirs.size();
  if (n < 2) return 0;
  double max_nn = 0;
  // grow the bucket search ring until every point has a certified neighbor
  for (double cell = 0.02;; cell *= 4) {
    SphereBuckets buckets(dirs, cell);
    bool all_found = true;
    max_nn = 0;
    for (size_t i = 0; i < n; ++i) {
      double best = 1e300;
      buckets.for_neighbors(dirs[i], [&](int j) {
        if (static_cast<size_t>(j) == i) return;
        best = std::min(best, (dirs[j] - dirs[i]).norm());
      });
      if (best > cell) {
        all_found = false;
        break;
      }
      max_nn = std::max(max_nn, best);
    }
    if (all_found) break;
    if (cell > 4) {
      max_nn = 2;  // isolated points on a sphere: gap saturates
      break;
    }
  }
  double ang = 2 * std::asin(std::clamp(max_nn / 2, 0.0, 1.0));
  return vis_from_angle(ang);
}

double visual_diameter(const BoundarySet& s) {
  // double sweep: farthest from an arbitrary point, then farthest from that
  auto dirs = spatial_dirs(s);
  auto farthest = [&](const V3& p) {
    double best = -1;
    size_t arg = 0;
    for (size_t i = 0; i < dirs.size(); ++i) {
      double a = angle_between(p, dirs[i]);
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    return std::pair<double, size_t>(best, arg);
  };
  auto [a0, i0] = farthest(dirs[0]);
  auto [a1, i1] = farthest(dirs[i0]);
  (void)i1;
  return vis_from_angle(std::max(a0, a1));
}

int covering_number(const BoundarySet& s, double eps, const SpacePoint& base) {
  if (s.points.empty()) throw std::invalid_argument("covering_number: empty set");
  if (!(eps > s.resolution))
    throw std::invalid_argument("covering_number: eps <= resolution (undersampled)");
  // Normalize the basepoint to the origin; the visual metric there is a
  // monotone function of the sphere angle, so cover in the angle metric.
  BoundarySet moved = s;
  if (chord_distance(SpaceConfig{s.n, 1.0}, base, origin()) > 1e-12) {
    Isometry g = carry_to_origin(SpaceConfig{s.n, 1.0}, base);
    for (auto& p : moved.points) p = g.apply(p);
  }
  auto dirs = spatial_dirs(moved);
  double ang = angle_from_vis(eps);
  if (ang >= std::numbers::pi) return 1;
  double chord = 2 * std::sin(ang / 2);
  size_t n = dirs.size();
  std::vector<bool> covered(n, false);
  int count = 0;
  SphereBuckets buckets(dirs, std::max(1e-9, chord));
  for (size_t i = 0; i < n; ++i) {
    if (covered[i]) continue;
    ++count;
    buckets.for_neighbors(dirs[i], [&](int j) {
      if (!covered[j] && (dirs[j] - dirs[i]).norm() <= chord) covered[j] = true;
    });
    covered[i] = true;
  }
  return count;
}

namespace {

SlopeFit dimension_slope(const BoundarySet& s, const SpacePoint& base, double& eps_min,
                         double& eps_max, int& used_scales) {
  double diam = visual_diameter(s);
  eps_max = diam / 2;
  std::vector<double> lx, ly;
  double eps = eps_max;
  while (eps > s.resolution * 1.0000001 && lx.size() < 24) {
    int nc = covering_number(s, eps, base);
    lx.push_back(std::log(1.0 / eps));
    ly.push_back(std::log(static_cast<double>(nc)));
    eps_min = eps;
    eps /= 2;
  }
  used_scales = static_cast<int>(lx.size());
  if (used_scales < 6)
    throw std::runtime_error(
        "box_dimension: fewer than 6 usable scales between resolution and diameter");
  return linear_fit(lx, ly);
}

}  // namespace

DimensionEstimate box_dimension(const BoundarySet& s, const SpacePoint& base) {
  DimensionEstimate out;
  if (s.points.size() < 3) {  // degenerate sets have dimension 0 at all scales
    out.beta = 0;
    out.scales = 0;
    return out;
  }
  SlopeFit fit = dimension_slope(s, base, out.eps_min, out.eps_max, out.scales);
  out.beta = std::max(0.0, fit.slope);
  out.residual = fit.residual;
  return out;
}

DimensionEstimate invariant_dimension(const BoundarySet& s, RandomStream& rng, int trials,
                                      double t_max) {
  if (trials < 1) throw std::invalid_argument("invariant_dimension: trials must be >= 1");
  SpaceConfig cfg{s.n, 1.0};
  DimensionEstimate out;
  out.beta = 0;
  for (int k = 0; k < trials; ++k) {
    double t = (k == 0) ? 0.0 : rng.uniform(0, t_max);
    Isometry g = (k == 0) ? Isometry{} : random_far_isometry(cfg, rng, t);
    BoundarySet moved = transform_set(s, g);
    DimensionEstimate d = box_dimension(moved, origin());
    out.per_gamma.emplace_back(t, d.beta);
    if (d.beta >= out.beta) {
      out.beta = d.beta;
      out.eps_min = d.eps_min;
      out.eps_max = d.eps_max;
      out.residual = d.residual;
      out.scales = d.scales;
    }
  }
  return out;
}

}  // namespace hypharm
