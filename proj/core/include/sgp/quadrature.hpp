#pragma once

#include <functional>

namespace sgp {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

/// Adaptive Simpson quadrature of g over [a, b] (a > b allowed) to the given
/// absolute tolerance, with Richardson correction on accepted panels.
QuadratureResult adaptive_simpson(const std::function<double(double)>& g, double a, double b,
                                  double abs_tol = 1e-10, int max_depth = 50);

}  // namespace sgp
