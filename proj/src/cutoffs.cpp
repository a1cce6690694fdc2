#include "fujita/cutoffs.hpp"

namespace fujita {

Jet smoothstep(double x) {
  if (x <= 0.0) return {0.0, 0.0, 0.0};
  if (x >= 1.0) return {1.0, 0.0, 0.0};
  const double x2 = x * x;
  return {x2 * x * (10.0 + x * (-15.0 + 6.0 * x)), 30.0 * x2 * (1.0 - x) * (1.0 - x), 60.0 * x * (1.0 - x) * (1.0 - 2.0 * x)};
}

namespace {

// Ramp from 1 down to 0 across [a, b].
Jet falling(double s, Band band) {
  const double h = band.hi - band.lo;
  const Jet j = smoothstep((s - band.lo) / h);
  return {1.0 - j.value, -j.d1 / h, -j.d2 / (h * h)};
}

Jet rising(double s, Band band) {
  const double h = band.hi - band.lo;
  const Jet j = smoothstep((s - band.lo) / h);
  return {j.value, j.d1 / h, j.d2 / (h * h)};
}

}  // namespace

Jet psi(double s) { return s < kPsiFall.lo ? rising(s, kPsiRise) : falling(s, kPsiFall); }

Jet phi(double s) { return falling(s, kPhiFall); }

Jet log_phi(double s) { return falling(s, kLogPhiFall); }

}  // namespace fujita
