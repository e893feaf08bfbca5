#pragma once

#include <functional>
#include <vector>

namespace hypharm {

// Adaptive Gauss-Kronrod (G7,K15) quadrature on [a,b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_tol = 1e-14, int max_depth = 24);

// Semi-infinite integral via geometric panels [a, a+w], [a+w, a+2w], ...;
// stops when a panel contributes less than rel_tol of the running total.
double integrate_to_inf(const std::function<double(double)>& f, double a, double panel = 2.0,
                        double rel_tol = 1e-10, int max_panels = 400);

// Natural cubic spline on a strictly increasing grid; C^2 evaluation.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> xs, std::vector<double> ys);
  double operator()(double x) const;
  bool empty() const { return xs_.empty(); }

 private:
  std::vector<double> xs_, ys_, m_;  // m_ = second derivatives at knots
};

}  // namespace hypharm
