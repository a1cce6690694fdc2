#pragma once

#include <span>
#include <vector>

namespace fujita {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = intercept + slope * x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of log(y) against log(x). All values must be positive.
LinearFit fit_loglog(std::span<const double> x, std::span<const double> y);

/// n points geometrically spaced from a to b inclusive.
std::vector<double> log_spaced(double a, double b, std::size_t n);

}  // namespace fujita
