#pragma once

// C^2 cutoff profiles built from the quintic smoothstep 6x^5 - 15x^4 + 10x^3.

namespace fujita {

/// Value and first two derivatives of a profile at one point.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Quintic smoothstep on [0, 1], clamped to 0 below and 1 above.
Jet smoothstep(double x);

/// Time cutoff: 0 on [0, 1/4], ramps up on [1/4, 1/2], 1 on [1/2, 3/4],
/// ramps down on [3/4, 4/5], 0 from 4/5 on.
Jet psi(double s);

/// Space cutoff: 1 on [0, 1], ramps down on [1, 2], 0 from 2 on.
Jet phi(double s);

/// Cutoff for the logarithmic variable: 1 on (-inf, 0], ramps down on [0, 1], 0 from 1 on.
Jet log_phi(double s);

struct Band {
  double lo;
  double hi;
};

inline constexpr Band kPsiRise{0.25, 0.5};
inline constexpr Band kPsiFall{0.75, 0.8};
inline constexpr Band kPhiFall{1.0, 2.0};
inline constexpr Band kLogPhiFall{0.0, 1.0};

}  // namespace fujita
