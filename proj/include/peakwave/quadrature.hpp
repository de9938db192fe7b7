#pragma once

#include <functional>

namespace peakwave::quad {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // achieved absolute error estimate
  int evaluations = 0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b].
/// Bisects the interval with the largest Kronrod error estimate until
/// |error| <= max(abs_tol, rel_tol*|value|) or max_intervals is reached.
QuadResult adaptive_gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol = 1e-12, double rel_tol = 1e-12,
                                  int max_intervals = 2000);

}  // namespace peakwave::quad
