#pragma once

#include <cstddef>
#include <functional>

namespace dixie {

struct IntegrationResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
  bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on a finite interval.
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate drops below rel_tol * |value| or `max_intervals` is reached. The
/// refinement order depends only on the integrand values, so the result is
/// reproducible bit for bit. `initial_pieces` pre-splits [a, b] uniformly.
IntegrationResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                     double rel_tol, std::size_t max_intervals,
                                     std::size_t initial_pieces = 1);

}  // namespace dixie
