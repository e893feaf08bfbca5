#include "hypharm/hull.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>

namespace hypharm {

void GeodesicHull::build_cache() {
  size_t n = lines.size();
  u0.resize(n); u1.resize(n); u2.resize(n); u3.resize(n);
  v0.resize(n); v1.resize(n); v2.resize(n); v3.resize(n);
  inv2uv.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const Vec4& u = lines[i].e0;
    const Vec4& v = lines[i].e1;
    u0[i] = u[0]; u1[i] = u[1]; u2[i] = u[2]; u3[i] = u[3];
    v0[i] = v[0]; v1[i] = v[1]; v2[i] = v[2]; v3[i] = v[3];
    double uv = mink_inner(u, v);
    if (uv > -1e-14) throw std::invalid_argument("GeodesicHull: degenerate line");
    inv2uv[i] = 1.0 / (-2.0 * uv);
  }
}

double hull_min_cosh(const GeodesicHull& k, const Vec4& p, int* argmin) {
  size_t n = k.size();
  double best = 1e300;
  int arg = -1;
  const double p0 = p[0], p1 = p[1], p2 = p[2], p3 = p[3];
  const double* ua = k.u0.data();
  const double* ub = k.u1.data();
  const double* uc = k.u2.data();
  const double* ud = k.u3.data();
  const double* va = k.v0.data();
  const double* vb = k.v1.data();
  const double* vc = k.v2.data();
  const double* vd = k.v3.data();
  const double* w = k.inv2uv.data();
  for (size_t i = 0; i < n; ++i) {
    double alpha = p0 * ua[i] - p1 * ub[i] - p2 * uc[i] - p3 * ud[i];
    double beta = p0 * va[i] - p1 * vb[i] - p2 * vc[i] - p3 * vd[i];
    double c2 = 4.0 * alpha * beta * w[i];  // cosh^2 of the line distance
    if (c2 < best) {
      best = c2;
      arg = static_cast<int>(i);
    }
  }
  if (argmin) *argmin = arg;
  return std::sqrt(std::max(1.0, best));
}

bool hull_within(const GeodesicHull& k, const Vec4& p, double cosh_a_d) {
  size_t n = k.size();
  const double thr = cosh_a_d * cosh_a_d;
  const double p0 = p[0], p1 = p[1], p2 = p[2], p3 = p[3];
  const double* ua = k.u0.data();
  const double* ub = k.u1.data();
  const double* uc = k.u2.data();
  const double* ud = k.u3.data();
  const double* va = k.v0.data();
  const double* vb = k.v1.data();
  const double* vc = k.v2.data();
  const double* vd = k.v3.data();
  const double* w = k.inv2uv.data();
  constexpr size_t kBlock = 512;
  for (size_t lo = 0; lo < n; lo += kBlock) {
    size_t hi = std::min(n, lo + kBlock);
    bool hit = false;
    for (size_t i = lo; i < hi; ++i) {
      double alpha = p0 * ua[i] - p1 * ub[i] - p2 * uc[i] - p3 * ud[i];
      double beta = p0 * va[i] - p1 * vb[i] - p2 * vc[i] - p3 * vd[i];
      hit = hit || (4.0 * alpha * beta * w[i] <= thr);
    }
    if (hit) return true;
  }
  return false;
}

HullProjection dist_to_hull(const SpacePoint& p, const GeodesicHull& k) {
  if (k.size() == 0) throw std::invalid_argument("dist_to_hull: empty hull");
  HullProjection out;
  int arg = -1;
  double c = hull_min_cosh(k, p.x, &arg);
  out.dist = std::acosh(c) / k.cfg.a;
  out.line_index = arg;
  out.foot = dist_to_line(k.cfg, p, k.lines[arg]).foot;
  return out;
}

SpacePoint retract(const SpacePoint& p, const GeodesicHull& k) { return dist_to_hull(p, k).foot; }

GeodesicHull build_hull(const BoundarySet& s, const std::string& pair_policy, int budget,
                        RandomStream& rng) {
  size_t m = s.points.size();
  if (m < 2) throw std::invalid_argument("build_hull: need at least 2 boundary points");
  if (budget < 1) throw std::invalid_argument("build_hull: budget must be positive");
  GeodesicHull k;
  k.cfg = SpaceConfig{s.n, 1.0};

  const long long all_pairs = static_cast<long long>(m) * (m - 1) / 2;
  bool use_all = (pair_policy == "all") || (pair_policy == "auto" && all_pairs <= budget);
  if (pair_policy == "all" && all_pairs > budget)
    throw std::invalid_argument("build_hull: all pairs exceed budget");

  if (use_all) {
    k.pair_policy = "all";
    for (size_t i = 0; i < m; ++i)
      for (size_t j = i + 1; j < m; ++j)
        k.lines.push_back(line_through(s.points[i], s.points[j]));
  } else {
    k.pair_policy = "stratified(1/4 near-diameter, 3/4 uniform)";
    std::set<std::pair<int, int>> chosen;
    auto add_pair = [&](int i, int j) {
      if (i == j) return false;
      if ((s.points[i].dir - s.points[j].dir).norm() < 1e-12) return false;
      auto key = std::minmax(i, j);
      return chosen.insert(key).second;
    };
    size_t quota_diam = static_cast<size_t>(budget / 4);
    // near-diameter pairs: oversample candidates, keep the visually widest
    std::vector<std::tuple<double, int, int>> cands;
    for (size_t t = 0; t < quota_diam * 6; ++t) {
      int i = static_cast<int>(rng.next_u64() % m);
      int j = static_cast<int>(rng.next_u64() % m);
      if (i == j) continue;
      double vd = visual_distance(k.cfg, origin(), s.points[i], s.points[j]);
      cands.emplace_back(vd, i, j);
    }
    std::sort(cands.begin(), cands.end(),
              [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
    for (const auto& [vd, i, j] : cands) {
      (void)vd;
      if (chosen.size() >= quota_diam) break;
      add_pair(i, j);
    }
    while (chosen.size() < static_cast<size_t>(budget)) {
      int i = static_cast<int>(rng.next_u64() % m);
      int j = static_cast<int>(rng.next_u64() % m);
      add_pair(i, j);
      if (chosen.size() >= static_cast<size_t>(all_pairs)) break;
    }
    for (const auto& [i, j] : chosen) k.lines.push_back(line_through(s.points[i], s.points[j]));
  }
  k.build_cache();
  return k;
}

}  // namespace hypharm
