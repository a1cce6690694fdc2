#pragma once

#include <string>

#include "fujita/grid.hpp"

namespace fujita {

/// a * exp(-((r - center)/width)^2)
RadialProfile gaussian(double center, double width, double amplitude);

/// Smooth compactly supported bump a * exp(1 - 1/(1 - (r/support)^2)) on
/// r < support, zero beyond. Equals a at the origin.
RadialProfile bump(double support, double amplitude);

/// Smoothed power law (r^2 + core^2)^(-decay/2): homogeneous of degree
/// -decay for r >> core.
RadialProfile power_law(double decay, double core);

RadialProfile zero_profile();

/// Radial volume integral omega_{N-1} int_0^inf f(r) r^{N-1} dr by adaptive
/// quadrature over [0, r_max].
double volume_integral(const RadialProfile& f, double dimension, double r_max);

}  // namespace fujita
