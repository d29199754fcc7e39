#pragma once

// Internal least-squares helper for log-log power-law fits.

#include <cmath>
#include <cstddef>
#include <vector>

namespace fracspec::detail {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares of ys against xs. Caller guarantees >= 2 points.
inline LogLogFit fit_line(const std::vector<double>& xs,
                          const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / double(n), my = sy / double(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pred = fit.intercept + fit.slope * xs[i];
    ss_res += (ys[i] - pred) * (ys[i] - pred);
    ss_tot += (ys[i] - my) * (ys[i] - my);
  }
  // A constant sequence is fit perfectly by its mean; report 1, not 0/0.
  fit.r_squared = (ss_tot > 0.0) ? std::max(0.0, 1.0 - ss_res / ss_tot)
                                 : (ss_res < 1e-24 ? 1.0 : 0.0);
  return fit;
}

}  // namespace fracspec::detail
