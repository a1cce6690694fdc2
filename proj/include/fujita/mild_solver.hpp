#pragma once

// Duhamel / Picard construction of mild solutions
//
//     u(t) = S(t)u0 + int_0^t S(t-s)(|x|^{sigma2-sigma1}|u(s)|^p) ds
//                   + int_0^t S(t-s)(s^rho |x|^{-sigma1} w) ds
//
// on a discrete time grid, for the global small-data theory and the local
// L^q theory.

#include <cstddef>
#include <string>
#include <vector>

#include "fujita/exponents.hpp"
#include "fujita/semigroup.hpp"
#include "fujita/trajectory.hpp"

namespace fujita {

struct MildConfig {
  double r = 0.0;   // Lebesgue index of the X norm; 0 picks the window midpoint
  double mu = 0.0;  // time weight of the X norm; ignored when r = 0 (taken from the weights)
  int max_picard = 30;
  double picard_tol = 1e-10;
  /// Duhamel substeps per report interval.
  std::size_t substeps = 8;
  double T_max = 10.0;
  /// Report times are log-spaced from t_min_ratio * T_max to T_max.
  std::size_t n_times = 64;
  double t_min_ratio = 1e-3;
  double q_local = 4.0;
};

/// Fine time grid 0 = t_0 < t_1 < ... with the indices of the report times.
struct TimeGrid {
  std::vector<double> times;
  std::vector<std::size_t> report;

  /// Log-spaced report times from ratio * T to T, `substeps` uniform substeps per interval,
  /// including [0, ratio * T].
  static TimeGrid log_spaced(double T, std::size_t n_times, double ratio, std::size_t substeps);
  /// n uniform report intervals on [0, T] with `substeps` substeps each; t = 0 is not reported.
  static TimeGrid uniform(double T, std::size_t n, std::size_t substeps);
};

/// Evaluates the three parts of the Duhamel map on a fixed grid. On each
/// substep [t_j, t_{j+1}] of length h the sources enter at the midpoint,
///
///     v_{j+1} = S(h/2)[ S(h/2) v_j + h g((u_j + u_{j+1})/2) + (int_{t_j}^{t_{j+1}} s^rho ds) f ],
///
/// with the s^rho integral taken exactly on every substep, so the singular
/// factor at s = 0 for rho < 0 is integrated, never sampled.
class DuhamelMap {
public:
  DuhamelMap(SemigroupOp op, TimeGrid grid);

  const SemigroupOp& op() const { return op_; }
  const TimeGrid& grid() const { return grid_; }

  /// S(t)u0 on the fine grid.
  Trajectory free_evolution(const RadialField& u0) const;
  /// H(t) = int_0^t S(t-s)(s^rho |x|^{-sigma1} w) ds.
  Trajectory duhamel_forcing(const RadialProfile& w) const;
  /// F(u)(t) = int_0^t S(t-s)(|x|^{sigma2-sigma1}|u(s)|^p) ds. `u` lives on the fine grid.
  Trajectory nonlinear(const Trajectory& u) const;
  /// G(u) = S(t)u0 + F(u) + H. Throws Error(Overflow) once any value exceeds 1e30.
  Trajectory picard_step(const Trajectory& u, const RadialField& u0, const RadialProfile& w) const;

  /// Zero trajectory on the fine grid.
  Trajectory zeros() const;

private:
  Trajectory run(const RadialField* u0, const Trajectory* u, const RadialProfile* w) const;

  SemigroupOp op_;
  TimeGrid grid_;
  std::vector<double> nonlinear_weight_;
  std::vector<double> forcing_weight_;
};

struct PicardRecord {
  int iteration = 0;
  double x_norm_diff = 0.0;
  double ratio = 0.0;  // x_norm_diff over the previous one; 0 for the first iteration
};

struct GlobalSolve {
  Trajectory trajectory;
  std::vector<PicardRecord> history;
  bool converged = false;
  double r = 0.0;
  double mu = 0.0;
  double residual = 0.0;  // ||G(u*) - u*||_X
};

/// Resolves (r, mu): the window midpoint and its derived weights when cfg.r = 0,
/// otherwise (cfg.r, mu from derived_weights).
void resolve_norm(const ProblemParams& params, const MildConfig& cfg, double& r, double& mu);

/// Picard iteration from u = 0 until the X-norm difference drops below
/// picard_tol or max_picard is reached. Throws Error(HypothesisViolation)
/// unless the global theory applies, Error(NotContracting) after three
/// consecutive ratios >= 1, Error(Overflow) on divergence.
GlobalSolve solve_global_small(const SemigroupOp& op, const RadialField& u0, const RadialProfile& w,
                               const MildConfig& cfg);

/// Largest contraction ratio observed (from the second iteration on) at
/// each data scale; NaN where the iteration fails.
std::vector<double> contraction_ladder(const SemigroupOp& op, const RadialField& u0, const RadialProfile& w,
                                       const MildConfig& cfg, const std::vector<double>& scales);

struct LocalSolve {
  Trajectory trajectory;  // uniform report grid on [0, T], t = 0 included
  double T = 0.0;
  double alpha = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double M = 0.0;
  double f_norm = 0.0;  // ||  |x|^{-sigma1} w ||_{L^q}
  int picard_iterations = 0;
  std::vector<double> norms;  // ||u(t_k)||_q on the report grid
  double max_defect = 0.0;    // max |n_k - (n_{k-1} + n_{k+1})/2-type interpolation|
  double scheme_tol = 0.0;    // max |n_k(G) - n_k(G/2)|
  bool continuous = false;    // max_defect <= 5 scheme_tol
};

struct LocalOptions {
  std::size_t n_report = 64;
  std::size_t substeps = 4;
  int max_picard = 60;
  double picard_tol = 1e-12;  // relative to sup_t ||u(t)||_q
};

/// R(T) = C1 T^{1-alpha} M^p + C2 ||f||_q T^{rho+1}.
double local_radius(const LocalSolve& s, const ProblemParams& params, double T);

/// Local mild solution in C([0, T]; L^q). C1 and C2 are measured on the
/// probe horizon `horizon_guess`: C1 from F(S(.)u0), C2 from H. M is twice
/// sup_t ||S(t)u0||_q (twice sup_t ||H(t)||_q when u0 = 0). T is the
/// largest value in [1e-6 horizon_guess, horizon_guess] with R(T) <= M/2,
/// found by bisection. The continuity check compares each norm with the
/// linear interpolation of its neighbours against the change of the trace
/// under halving the substep. Throws Error(Inadmissible) for q failing the
/// local conditions and Error(NoValidT) when even the smallest T fails.
LocalSolve solve_local_Lq(const SemigroupOp& op, const RadialField& u0, const RadialProfile& w, double q,
                          double horizon_guess, const LocalOptions& options = {});

/// Smooth radial test function zeta(t, r) = psi(t/T) phi(r/rho) with its
/// derivatives, for the weak formulation.
struct TestFunction {
  double T;
  double rho;
};

struct WeakResidual {
  double residual = 0.0;  // int int (|x|^{sigma2}|u|^p + t^rho w) zeta + u Delta zeta + |x|^{sigma1} u zeta_t
  double scale = 0.0;     // sum of the absolute values of the four terms
  double relative() const { return scale > 0.0 ? std::abs(residual) / scale : 0.0; }
};

/// Weak-form residual of a trajectory (trapezoid in time over its frames,
/// trapezoid in r over the nodes). The test function must vanish at both
/// ends of the stored time range.
WeakResidual weak_form_residual(const Trajectory& u, const RadialProfile& w, const ProblemParams& params,
                                const TestFunction& zeta);

/// CSV with columns t, Lr_norm, weighted_norm, max_value over the report frames.
std::string trajectory_csv(const Trajectory& u, const ProblemParams& params, double r, double mu);
/// CSV with columns iteration, x_norm_diff, ratio.
std::string convergence_csv(const GlobalSolve& s, const ProblemParams& params);

}  // namespace fujita
