#pragma once

// Discrete semigroup S(t) generated by |x|^{-sigma1} Delta on radial
// functions, and numerical certification of its smoothing estimates.
//
// The operator is discretized in conservative form on control volumes
// [f_i, f_{i+1}] of the radial grid:
//
//     V_i du_i/dt = K_{i+1/2}(u_{i+1} - u_i) - K_{i-1/2}(u_i - u_{i-1}),
//
// with V_i = int_cell r^{N-1+sigma1} dr and K_{i+1/2} = 1/int_{r_i}^{r_{i+1}} s^{1-N} ds,
// which is exact for radial harmonic functions. The first cell reaches the
// origin (zero flux there); the last node carries a homogeneous Dirichlet
// condition. The weighted mass sum_i V_i u_i changes only through the outer
// boundary flux.

#include <span>
#include <vector>

#include "fujita/exponents.hpp"
#include "fujita/fit.hpp"
#include "fujita/grid.hpp"

namespace fujita {

enum class TimeScheme { ImplicitEuler, CrankNicolson };

struct SemigroupOptions {
  TimeScheme scheme = TimeScheme::ImplicitEuler;
  /// Largest substep used by apply(); every call uses at least min_steps substeps.
  double dt_max = 1e-2;
  std::size_t min_steps = 1;
};

class SemigroupOp {
public:
  SemigroupOp(GridPtr grid, const ProblemParams& params, SemigroupOptions options = {});

  const GridPtr& grid() const { return grid_; }
  const ProblemParams& params() const { return params_; }
  const SemigroupOptions& options() const { return options_; }
  double dimension() const { return static_cast<double>(params_.N); }

  /// S(t) field. t = 0 returns the input. Throws Error(StepFailure) if a
  /// tridiagonal solve breaks down.
  RadialField apply(const RadialField& field, double t) const;

  /// One discrete step of size dt with the configured scheme (no substepping).
  RadialField step(const RadialField& field, double dt) const;
  /// One implicit Euler step (I - dt L)^{-1}, regardless of the configured scheme.
  RadialField implicit_step(const RadialField& field, double dt) const;
  /// Solves (I - dt L) u = rhs in place.
  void implicit_solve(std::span<double> rhs, double dt) const;

  /// Fields S(t_k) field for increasing t_k >= 0, advancing incrementally.
  std::vector<RadialField> evolve(const RadialField& field, std::span<const double> times) const;

  /// L u = |x|^{-sigma1} Delta u in its discrete form (zero at the Dirichlet node).
  RadialField generator(const RadialField& field) const;

  /// omega_{N-1} sum_i V_i u_i, the discrete version of int |x|^{sigma1} u dx.
  double weighted_mass(const RadialField& field) const;

  /// Cell averages of r^{e - sigma1}: (int_cell r^{N-1+e} dr) / V_i. Used to
  /// place sources |x|^{e} g into the mass-weighted equation.
  std::vector<double> source_weights(double e) const;

  const std::vector<double>& cell_volumes() const { return volume_; }
  const std::vector<double>& conductances() const { return conductance_; }

private:
  void cn_step(std::vector<double>& u, double dt) const;

  GridPtr grid_;
  ProblemParams params_;
  SemigroupOptions options_;
  std::vector<double> volume_;       // size M
  std::vector<double> conductance_;  // size M-1, between nodes i and i+1
};

struct SlopeStudy {
  std::vector<double> times;
  std::vector<double> norms;
  double theory_exponent = 0.0;
  double fitted_exponent = 0.0;
  double r_squared = 0.0;
  double q = 0.0;
  double gamma = 0.0;

  double relative_error() const;
};

/// Fits log ||S(t) source||_b against log t and reports the theory exponent
/// -(N/(2+sigma1))(1/a - 1/b). Requires 1 < a <= b < inf and
/// 1/a < 1 + sigma1/N, else Error(ConditionViolation). `source` is sampled
/// on the operator's grid.
SlopeStudy smoothing_slope(const SemigroupOp& op, double a, double b, const RadialProfile& source,
                           std::span<const double> t_list);

/// Fits the decay of ||S(t)(|x|^{-gamma} source)||_{q2}; theory exponent
/// -(N/(2+sigma1))(1/q1 - 1/q2) - gamma/(2+sigma1). Requires
/// 0 < 1/q2 < gamma/N + 1/q1 < 1 + sigma1/N and 0 <= gamma < N.
SlopeStudy weighted_smoothing_check(const SemigroupOp& op, double q1, double q2, double gamma,
                                    const RadialProfile& source, std::span<const double> t_list);

/// Theory exponents, exposed for callers that build their own studies.
double smoothing_exponent(const ProblemParams& params, double a, double b);
double weighted_smoothing_exponent(const ProblemParams& params, double q1, double q2, double gamma);

/// ||D^{-1} S(t) D phi - S(lambda^{2+sigma1} t) phi||_2 / ||S(lambda^{2+sigma1} t) phi||_2
/// with D phi(x) = phi(lambda x), evaluated on the nodes in
/// [10 max(lambda, 1/lambda) r_1, r_max / (10 max(lambda, 1/lambda))].
double scaling_identity_check(const SemigroupOp& op, double lambda, double t, const RadialProfile& source);

}  // namespace fujita
