#include "hypharm/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace hypharm {

SlopeFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("linear_fit: bad input");
  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double det = n * sxx - sx * sx;
  SlopeFit out;
  out.slope = (n * sxy - sx * sy) / det;
  out.intercept = (sy * sxx - sx * sxy) / det;
  double ss = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double r = ys[i] - (out.intercept + out.slope * xs[i]);
    ss += r * r;
  }
  out.residual = std::sqrt(ss / n);
  return out;
}

DecayFit decay_fit(const std::vector<double>& xs, const std::vector<double>& values,
                   const std::vector<double>& stderrs) {
  if (xs.size() != values.size() || xs.size() < 5)
    throw std::invalid_argument("decay_fit: need at least 5 points");
  if (!stderrs.empty() && stderrs.size() != xs.size())
    throw std::invalid_argument("decay_fit: stderr size mismatch");
  std::vector<double> ly(xs.size()), w(xs.size(), 1.0);
  for (size_t i = 0; i < xs.size(); ++i) {
    if (!(values[i] > 0)) throw std::invalid_argument("decay_fit: nonpositive value");
    ly[i] = std::log(values[i]);
    if (!stderrs.empty() && stderrs[i] > 0) {
      double sl = stderrs[i] / values[i];  // stderr on log scale
      w[i] = 1.0 / (sl * sl);
    }
  }
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sw += w[i];
    sx += w[i] * xs[i];
    sy += w[i] * ly[i];
    sxx += w[i] * xs[i] * xs[i];
    sxy += w[i] * xs[i] * ly[i];
  }
  double det = sw * sxx - sx * sx;
  double slope = (sw * sxy - sx * sy) / det;
  double icept = (sy * sxx - sx * sxy) / det;

  DecayFit out;
  out.rate = -slope;
  out.intercept = icept;
  out.points = static_cast<int>(xs.size());
  out.window_lo = xs.front();
  out.window_hi = xs.back();
  double ss = 0, ssw = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double r = ly[i] - (icept + slope * xs[i]);
    ss += r * r;
    ssw += w[i] * r * r;
  }
  out.residual = std::sqrt(ss / static_cast<double>(xs.size()));
  // slope variance: sigma^2 * sw / det with sigma^2 from the weighted residual
  double dof = std::max(1.0, static_cast<double>(xs.size()) - 2.0);
  out.stderr_rate = std::sqrt(std::max(0.0, (ssw / dof) * sw / det));
  return out;
}

}  // namespace hypharm
