#include "hypharm/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace hypharm {

namespace {

// Gauss-Kronrod 15-point nodes/weights on [-1,1] (embedded Gauss-7).
constexpr double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                            0.741531185599394, 0.586087235467691, 0.405845151377397,
                            0.207784955007898, 0.0};
constexpr double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                            0.140653259715525, 0.169004726639267, 0.190350578064785,
                            0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                           0.417959183673469};

struct PanelResult {
  double kronrod;
  double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = f(c);
  double rk = kWgk[7] * fc;
  double rg = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    double x = h * kXgk[i];
    double fs = f(c - x) + f(c + x);
    rk += kWgk[i] * fs;
    if (i % 2 == 1) rg += kWg[i / 2] * fs;
  }
  double kr = rk * h;
  double err = std::abs((rk - rg) * h);
  return {kr, std::pow(200 * err, 1.5) < std::abs(kr) ? std::pow(200 * err, 1.5) : err};
}

double adapt(const std::function<double(double)>& f, double a, double b, double rel_tol,
             double abs_tol, int depth) {
  PanelResult r = gk15(f, a, b);
  if (depth <= 0 || r.err <= abs_tol || r.err <= rel_tol * std::abs(r.kronrod)) return r.kronrod;
  double c = 0.5 * (a + b);
  return adapt(f, a, c, rel_tol, abs_tol * 0.5, depth - 1) +
         adapt(f, c, b, rel_tol, abs_tol * 0.5, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 double abs_tol, int max_depth) {
  if (a == b) return 0;
  return adapt(f, a, b, rel_tol, abs_tol, max_depth);
}

double integrate_to_inf(const std::function<double(double)>& f, double a, double panel,
                        double rel_tol, int max_panels) {
  double total = 0;
  double lo = a;
  for (int i = 0; i < max_panels; ++i) {
    double hi = lo + panel;
    double part = integrate(f, lo, hi, rel_tol * 0.1, 1e-300);
    total += part;
    if (i > 1 && std::abs(part) < rel_tol * std::abs(total)) return total;
    lo = hi;
  }
  return total;
}

CubicSpline::CubicSpline(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  size_t n = xs_.size();
  if (n < 3 || ys_.size() != n) throw std::invalid_argument("CubicSpline: need >= 3 knots");
  m_.assign(n, 0.0);
  std::vector<double> diag(n, 0), off(n, 0), rhs(n, 0);
  for (size_t i = 1; i + 1 < n; ++i) {
    double h0 = xs_[i] - xs_[i - 1], h1 = xs_[i + 1] - xs_[i];
    diag[i] = 2 * (h0 + h1);
    off[i] = h1;
    rhs[i] = 6 * ((ys_[i + 1] - ys_[i]) / h1 - (ys_[i] - ys_[i - 1]) / h0);
  }
  // Thomas solve on interior (natural: m_0 = m_{n-1} = 0).
  for (size_t i = 2; i + 1 < n; ++i) {
    double h0 = xs_[i] - xs_[i - 1];
    double w = h0 / diag[i - 1];
    diag[i] -= w * off[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  for (size_t i = n - 2; i >= 1; --i) {
    m_[i] = (rhs[i] - off[i] * m_[i + 1]) / diag[i];
    if (i == 1) break;
  }
}

double CubicSpline::operator()(double x) const {
  size_t n = xs_.size();
  if (x <= xs_.front()) x = xs_.front();
  if (x >= xs_.back()) x = xs_.back();
  size_t lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    size_t mid = (lo + hi) / 2;
    if (xs_[mid] <= x)
      lo = mid;
    else
      hi = mid;
  }
  double h = xs_[hi] - xs_[lo];
  double t = (x - xs_[lo]) / h;
  double a = ys_[lo], b = ys_[hi];
  return (1 - t) * a + t * b +
         h * h / 6.0 * ((std::pow(1 - t, 3) - (1 - t)) * m_[lo] + (std::pow(t, 3) - t) * m_[hi]);
}

}  // namespace hypharm
