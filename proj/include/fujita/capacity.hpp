#pragma once

// Test-function (capacity) integrals of the nonexistence argument for the
// separable test function
//
//     phi(t, x) = psi^{p/(p-1)}(t/T) * Phi(|x|),  Phi = phi^{2p/(p-1)}(|x|/R),
//
// and regressions of their growth in R.

#include <vector>

#include "fujita/exponents.hpp"
#include "fujita/fit.hpp"

namespace fujita {

struct CapacityIntegrals {
  double R = 0.0;
  double T = 0.0;
  /// int int |phi_t|^{p'} |x|^{(sigma1 p - sigma2)/(p-1)} phi^{-1/(p-1)} dx dt
  double I_time = 0.0;
  /// int int |x|^{-sigma2/(p-1)} |Delta phi|^{p'} phi^{-1/(p-1)} dx dt
  double I_space = 0.0;
  /// int_0^T t^rho psi^{p'}(t/T) dt
  double I_forcing = 0.0;
};

/// Adaptive Gauss-Kronrod quadrature with each ramp band split into 8
/// panels. Requires R > 1, T > 1, p > 1. Throws Error(QuadratureFailure) on
/// a non-finite or unconverged integral, including a non-integrable weight
/// at the origin.
CapacityIntegrals capacity_integrals(const ProblemParams& params, double R, double T);

enum class TimeRule {
  Parabolic,  // T = R^{2 + sigma1}
  Power,      // T = R^m
};

struct CapacityFit {
  TimeRule rule = TimeRule::Parabolic;
  double m = 0.0;
  std::vector<CapacityIntegrals> rows;
  /// Fits of I_time / I_forcing and I_space / I_forcing against R.
  LinearFit time_fit;
  LinearFit space_fit;
  double theory_time = 0.0;
  double theory_space = 0.0;
  /// Theory predicts both exponents negative.
  bool nonexistence_predicted = false;
  bool slopes_negative = false;
};

/// Regresses the capacity ratios against R under the chosen time rule.
/// Power uses m = N/rho when m is not positive. Requires R_list to span at
/// least 1.5 decades (Error(ConfigError)); throws Error(PoorFit) when either
/// regression has R^2 < 0.99.
CapacityFit capacity_exponent_fit(const ProblemParams& params, const std::vector<double>& R_list, TimeRule rule,
                                  double m = 0.0);

/// The two exponents of R the fit is compared with.
double capacity_theory_time(const ProblemParams& params, TimeRule rule, double m);
double capacity_theory_space(const ProblemParams& params, TimeRule rule, double m);

struct LogCapacityFit {
  std::vector<double> R;
  std::vector<double> space;  // spatial factor of I_space with the logarithmic cutoff
  double fitted = 0.0;        // exponent s of log R in the expansion fit
  double raw_slope = 0.0;     // plain least-squares slope of log(space) against log(log R)
  double r_squared = 0.0;     // of the expansion fit, in log space
  double theory = 0.0;        // (2 - N)/(2 + sigma2)
};

/// Spatial factor of I_space for Phi = phi_log^{2p'}(log(|x|/sqrt R)/log sqrt R),
/// supported in sqrt R < |x| <= R.
double log_capacity_space(const ProblemParams& params, double R);

/// Fits space = (log R)^s (a0 + a1/log R + a2/log^2 R), minimizing the
/// relative residual over s with the a_k solved by linear least squares.
/// Delta Phi is (N-2) log(sqrt R) Phi' plus a term one power of log R
/// smaller, so |Delta Phi|^{p'} expands in powers of 1/log R; for p' = 2 the
/// expansion ends at the quadratic term and the model is exact. Over
/// R <= 10^6 the correction terms are of order one, which is why the plain
/// slope is reported separately. Requires rho = 0, N >= 3 and
/// p = (N + sigma2)/(N - 2) (Error(HypothesisViolation)); Error(PoorFit)
/// when R^2 < 0.99.
LogCapacityFit log_capacity_fit(const ProblemParams& params, const std::vector<double>& R_list);

}  // namespace fujita
