#pragma once

#include <vector>

namespace hypharm {

// Weighted least-squares exponential-rate fit: log(value) ~ intercept - rate * x.
// Weights come from per-point standard errors of the values (propagated to
// log scale); zero stderr means unit weight.
struct DecayFit {
  double rate = 0;        // decay rate (positive = decaying)
  double intercept = 0;   // log-value at x = 0
  double stderr_rate = 0;
  double residual = 0;    // rms residual of the log-linear fit
  double window_lo = 0;
  double window_hi = 0;
  int points = 0;
};

DecayFit decay_fit(const std::vector<double>& xs, const std::vector<double>& values,
                   const std::vector<double>& stderrs = {});

// Plain least-squares slope of ys vs xs (used by dimension fits).
struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;
};

SlopeFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace hypharm
