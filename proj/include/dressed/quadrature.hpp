#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace dressed {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [a, b].
/// `breakpoints` inside (a, b) become fixed panel boundaries (kinks,
/// integrable singularities). Stops when the summed |K15 - G7| estimate is
/// below max(abs_tol, 50 eps |value|); throws QuadratureFailure if that needs
/// more than `max_panels` panels.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, std::size_t max_panels,
                           std::span<const double> breakpoints = {});

}  // namespace dressed
