#include "hypharm/hull_probes.hpp"

#include "hypharm/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hypharm {

namespace {

// Random point at line-orthogonal distance in [s, s+1/2] from a random spot
// on a random hull line, accepted when its true hull distance lands in the
// same band.
SpacePoint sample_at_shell(const GeodesicHull& k, RandomStream& rng, double s, double* dist_out) {
  const SpaceConfig& cfg = k.cfg;
  for (int attempt = 0; attempt < 200; ++attempt) {
    size_t li = rng.next_u64() % k.size();
    double t = rng.uniform(-2.5, 2.5);
    SpacePoint foot = geodesic_point(cfg, k.lines[li], t);
    // unit normal at foot: random tangent orthogonalized against the line
    SpacePoint ahead = geodesic_point(cfg, k.lines[li], t + 0.01);
    TangentVector tang = log_map(cfg, foot, ahead);
    double tn = std::sqrt(std::max(1e-300, mink_inner(tang.v, tang.v)));
    Vec4 td = tang.v / tn;
    Vec4 nu = random_unit_tangent(cfg, rng, foot);
    nu -= mink_inner(nu, td) * td;
    double nn = std::sqrt(std::max(1e-300, mink_inner(nu, nu)));
    if (nn < 1e-6) continue;
    nu /= nn;
    double u = rng.uniform(s, s + 0.5);
    SpacePoint x = exp_map(cfg, {foot, (u * cfg.a) * nu});
    double dh = std::acosh(hull_min_cosh(k, x.x)) / cfg.a;
    if (dh >= s && dh <= s + 0.5) {
      *dist_out = dh;
      return x;
    }
  }
  throw std::runtime_error("lipschitz_profile: shell sampling budget exhausted");
}

}  // namespace

LipschitzProfile lipschitz_profile(const GeodesicHull& k, RandomStream& rng,
                                   const std::vector<double>& shells, int pairs_per_shell,
                                   double pair_gap) {
  if (shells.empty() || pairs_per_shell < 1)
    throw std::invalid_argument("lipschitz_profile: bad arguments");
  const SpaceConfig& cfg = k.cfg;
  LipschitzProfile out;
  out.shells = shells;
  out.max_ratios.resize(shells.size());

  std::vector<RandomStream> streams;
  for (size_t si = 0; si < shells.size(); ++si) streams.push_back(rng.child(1000 + si));

  auto worker = [&](int si) {
    RandomStream local = streams[si];
    double s = shells[si];
    double max_ratio = 0;
    for (int p = 0; p < pairs_per_shell; ++p) {
      for (int attempt = 0;; ++attempt) {
        if (attempt >= 200)
          throw std::runtime_error("lipschitz_profile: pair resampling budget exhausted");
        double dx = 0;
        SpacePoint x = sample_at_shell(k, local, s, &dx);
        Vec4 dir = random_unit_tangent(cfg, local, x);
        SpacePoint y = exp_map(cfg, {x, (pair_gap * cfg.a) * dir});
        double dy = std::acosh(hull_min_cosh(k, y.x)) / cfg.a;
        if (dy < s) continue;
        // audit: the connecting geodesic stays outside N_s
        bool outside = true;
        GeodesicLine seg = segment(x, y);
        for (int q = 1; q <= 4; ++q) {
          SpacePoint mid = geodesic_point(cfg, seg, pair_gap * q / 5.0);
          if (std::acosh(hull_min_cosh(k, mid.x)) / cfg.a < s - 1e-9) {
            outside = false;
            break;
          }
        }
        if (!outside) continue;
        SpacePoint rx = retract(x, k);
        SpacePoint ry = retract(y, k);
        double num = chord_distance(cfg, rx, ry);  // resolves tiny separations
        double den = distance(cfg, x, y);
        if (den > 1e-12) max_ratio = std::max(max_ratio, num / den);
        break;
      }
    }
    return max_ratio;
  };
  out.max_ratios = parallel_map<double>(static_cast<int>(shells.size()), worker);

  std::vector<double> ly(out.max_ratios.size());
  for (size_t i = 0; i < ly.size(); ++i) {
    if (!(out.max_ratios[i] > 0)) throw std::runtime_error("lipschitz_profile: zero ratio");
    ly[i] = std::log(out.max_ratios[i]);
  }
  SlopeFit fit = linear_fit(shells, ly);
  out.slope = fit.slope;
  out.slope_residual = fit.residual;
  return out;
}

ConeReport cone_inclusion_probe(const BoundarySet& s, const GeodesicHull& k, const SpacePoint& x,
                                const std::vector<double>& r_grid, int samples, RandomStream& rng,
                                double c_pad) {
  for (double r : r_grid)
    if (r < 1.0) throw std::invalid_argument("cone_inclusion_probe: R must be >= 1");
  const SpaceConfig& cfg = k.cfg;
  ConeReport out;
  out.r_grid = r_grid;
  out.max_visual_gap.resize(r_grid.size(), 0.0);
  double pad = 0;

  std::vector<RandomStream> streams;
  for (size_t ri = 0; ri < r_grid.size(); ++ri) streams.push_back(rng.child(2000 + ri));

  struct RowResult { double gap; double pad; };
  auto worker = [&](int ri) {
    RandomStream local = streams[ri];
    double r = r_grid[ri];
    double max_gap = 0, local_pad = 0;
    for (int i = 0; i < samples; ++i) {
      const IdealPoint& target = s.points[local.next_u64() % s.points.size()];
      double u = local.uniform(r, r + 1.0);
      SpacePoint on_cone = geodesic_point(cfg, ray(x, target), u);
      local_pad = std::max(local_pad, std::acosh(hull_min_cosh(k, on_cone.x)) / cfg.a);
      // perturb within distance c_pad, keep points outside B(x, r)
      double c = local.uniform(0, c_pad);
      SpacePoint z = exp_map(cfg, {on_cone, (c * cfg.a) * random_unit_tangent(cfg, local, on_cone)});
      if (distance(cfg, x, z) < r) continue;
      IdealPoint proj = radial_projection(cfg, x, z);
      double best = 1e300;
      for (const auto& sp : s.points) {
        if ((sp.dir - proj.dir).norm() < 1e-14) { best = 0; break; }
        best = std::min(best, visual_distance(cfg, x, proj, sp));
      }
      max_gap = std::max(max_gap, best);
    }
    return RowResult{max_gap, local_pad};
  };
  auto rows = parallel_map<RowResult>(static_cast<int>(r_grid.size()), worker);
  std::vector<double> ly;
  for (size_t ri = 0; ri < rows.size(); ++ri) {
    out.max_visual_gap[ri] = rows[ri].gap;
    pad = std::max(pad, rows[ri].pad);
    ly.push_back(std::log(std::max(1e-300, rows[ri].gap)));
  }
  out.pad_estimate = pad;
  if (r_grid.size() >= 2) out.slope = linear_fit(r_grid, ly).slope;
  return out;
}

VolumeProfile volume_profile(const GeodesicHull& k, const SpacePoint& x, double d, double rho_max,
                             int samples_per_shell, RandomStream& rng) {
  if (d < 0 || rho_max < 2) throw std::invalid_argument("volume_profile: need d >= 0, rho_max >= 2");
  const SpaceConfig& cfg = k.cfg;
  VolumeProfile out;
  out.d = d;
  int shells = static_cast<int>(std::floor(rho_max));
  double cosh_ad = std::cosh(cfg.a * d);

  std::vector<RandomStream> streams;
  for (int ri = 0; ri < shells; ++ri) streams.push_back(rng.child(3000 + ri));

  struct Row { long long hits; double vol; double se; };
  auto worker = [&](int ri) {
    RandomStream local = streams[ri];
    double r0 = ri, r1 = ri + 1;
    long long hits = 0;
    for (int i = 0; i < samples_per_shell; ++i) {
      SpacePoint p = sample_annulus_uniform(cfg, local, x, r0, r1);
      if (hull_within(k, p.x, cosh_ad)) ++hits;
    }
    double van = ball_volume(cfg, r1) - ball_volume(cfg, r0);
    double frac = static_cast<double>(hits) / samples_per_shell;
    double se = van * std::sqrt(std::max(0.0, frac * (1 - frac) / samples_per_shell));
    return Row{hits, van * frac, se};
  };
  auto rows = parallel_map<Row>(shells, worker);

  double cum = 0;
  for (int ri = 0; ri < shells; ++ri) {
    out.rho_grid.push_back(ri);
    out.counts.push_back(rows[ri].hits);
    out.samples.push_back(samples_per_shell);
    out.vol_annulus.push_back(rows[ri].vol);
    out.vol_stderr.push_back(rows[ri].se);
    cum += rows[ri].vol;
    out.vol_cumulative.push_back(cum);
  }

  // growth rate over annuli with centers in [2, rho_max]
  std::vector<double> xs, vals, errs;
  for (int ri = 0; ri < shells; ++ri) {
    double center = ri + 0.5;
    if (center < 2.0) continue;
    if (out.counts[ri] == 0) {
      out.has_empty_annuli = true;
      continue;
    }
    xs.push_back(center);
    vals.push_back(out.vol_annulus[ri]);
    errs.push_back(out.vol_stderr[ri]);
  }
  if (xs.size() >= 5) {
    DecayFit fit = decay_fit(xs, vals, errs);
    out.fitted_rate = -fit.rate;  // growth
    out.fitted_stderr = fit.stderr_rate;
  } else if (xs.size() >= 2) {
    std::vector<double> ly;
    for (double v : vals) ly.push_back(std::log(v));
    out.fitted_rate = linear_fit(xs, ly).slope;
  }
  return out;
}

}  // namespace hypharm
