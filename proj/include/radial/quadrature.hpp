#pragma once

// Composite Gauss-Kronrod (7/15) quadrature on explicit panel breakpoints.

#include <functional>
#include <vector>

namespace radial::quad {

struct Estimate {
  double value = 0.0;
  double error = 0.0;  // sum of per-panel |K15 - G7|
  int evaluations = 0;
};

Estimate gk15(const std::function<double(double)>& f, double a, double b);

/// Sum of gk15 over consecutive breakpoints (which must be increasing).
Estimate panels(const std::function<double(double)>& f, const std::vector<double>& breaks);

}  // namespace radial::quad
