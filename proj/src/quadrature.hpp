#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace garchlim {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // conservative absolute error estimate
  std::size_t panels = 0;
};

// Adaptive Gauss-Kronrod 15(7) on a finite interval. Panels are bisected
// worst-error-first until the summed error estimate meets
// max(abs_tol, rel_tol * |value|). Endpoints are never evaluated, so
// integrable endpoint singularities are allowed.
//
// Optional interior break points seed the initial panel list (useful to
// split an integrand at known scale changes).
//
// Throws ToleranceError (carrying the achieved estimate) if the tolerance is
// not met within max_panels.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                              double abs_tol, double rel_tol,
                              std::span<const double> interior_breaks = {},
                              std::size_t max_panels = 4000);

}  // namespace garchlim
