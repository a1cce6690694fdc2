#include "fujita/profiles.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace fujita {

RadialProfile gaussian(double center, double width, double amplitude) {
  return [=](double r) {
    const double z = (r - center) / width;
    return amplitude * std::exp(-z * z);
  };
}

RadialProfile bump(double support, double amplitude) {
  return [=](double r) {
    const double s = r / support;
    if (s >= 1.0) return 0.0;
    return amplitude * std::exp(1.0 - 1.0 / (1.0 - s * s));
  };
}

RadialProfile power_law(double decay, double core) {
  return [=](double r) { return std::pow(r * r + core * core, -0.5 * decay); };
}

RadialProfile zero_profile() {
  return [](double) { return 0.0; };
}

double volume_integral(const RadialProfile& f, double dimension, double r_max) {
  auto integrand = [&](double r) { return f(r) * std::pow(r, dimension - 1.0); };
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, r_max, 15, 1e-13);
  return sphere_area(dimension) * v;
}

}  // namespace fujita
