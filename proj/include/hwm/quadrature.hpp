#pragma once
// Adaptive Gauss-Kronrod (7-15) integration on a finite interval.

#include <functional>

namespace hwm {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  int panels = 0;
};

/// Integrates f over [a, b] by adaptive bisection until the panel error sum
/// drops under max(abs_tol, rel_tol * |value|) or max_depth is reached.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-12, double rel_tol = 1e-12,
                     int max_depth = 20);

}  // namespace hwm
