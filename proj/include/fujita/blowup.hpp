#pragma once

// Direct IMEX integration of
//
//     |x|^{sigma1} u_t = Delta u + |x|^{sigma2}|u|^p + t^rho w(|x|)
//
// with blow-up detection, and a scan of the blow-up/global outcome across p.

#include <cstddef>
#include <string>
#include <vector>

#include "fujita/exponents.hpp"
#include "fujita/semigroup.hpp"
#include "fujita/trajectory.hpp"

namespace fujita {

struct BlowupConfig {
  double dt_init = 1e-3;
  double dt_min = 1e-14;
  double dt_max = 1.0;
  /// Steps never exceed dt_rel * max(t, dt_init), which keeps the relative
  /// time resolution uniform on long horizons.
  double dt_rel = 0.05;
  double dt_growth = 1.1;
  /// dt <= cfl / (p max_i weight_i |u_i|^{p-1}) for the explicit nonlinearity.
  double cfl = 0.25;
  double blowup_norm_cap = 1e8;
  /// A step whose sup norm more than doubles is rejected and retried at
  /// dt/2, once the norm exceeds this floor.
  double doubling_floor = 1e-6;
  double T_max = 10.0;
  std::size_t max_steps = 5'000'000;
  /// Frames stored in the outcome's trajectory; the integrator lands on them exactly.
  std::vector<double> sample_times;
};

enum class Outcome { Global, BlownUp, Inconclusive };

std::string to_string(Outcome outcome);

struct SolveOutcome {
  Outcome kind = Outcome::Inconclusive;
  double t_end = 0.0;  // t* for BlownUp, T_max for Global, time reached otherwise
  double max_norm = 0.0;
  double final_norm = 0.0;
  double min_dt = 0.0;
  std::size_t steps = 0;
  std::size_t rejected = 0;
  std::string note;
  Trajectory samples;
};

/// Implicit diffusion (semigroup matrices), explicit nonlinearity and
/// forcing. The forcing integral of s^rho over each step is exact, so rho < 0
/// is handled at t = 0. BlownUp when sup|u| exceeds the cap, or when the
/// step falls below dt_min while sup|u| grew 10x over the last 10 steps;
/// Global when T_max is reached; Inconclusive otherwise.
SolveOutcome integrate_nonlinear(const SemigroupOp& op, const RadialField& u0, const RadialProfile& w,
                                 const BlowupConfig& cfg);

struct ScanPoint {
  double p = 0.0;
  Outcome outcome = Outcome::Inconclusive;
  double t_end = 0.0;
  double max_norm = 0.0;
  bool bisection = false;
};

struct ScanResult {
  std::vector<ScanPoint> points;  // in evaluation order
  double p_lo = 0.0;              // largest p observed to blow up next to the transition
  double p_hi = 0.0;              // smallest p observed to stay global next to the transition
  ExtendedReal p_star = ExtendedReal::infinity();
  double amplitude = 1.0;
};

struct ScanSetup {
  GridPtr grid;
  SemigroupOptions semigroup;
  RadialProfile u0;
  RadialProfile w;  // unit-amplitude forcing profile
  BlowupConfig cfg;
};

/// Runs the p values of p_grid (sorted ascending) at forcing amplitude
/// `amplitude`, locates the lowest BlownUp -> Global transition between
/// neighbours and refines it by `bisections` bisection steps. Throws
/// Error(NoBracket) when no such transition exists.
ScanResult scan_threshold(const ProblemParams& base, std::vector<double> p_grid, double amplitude,
                          const ScanSetup& setup, int bisections);

/// Smallest amplitude of the form a0 * 2^k (k >= 0) for which the solution
/// at p = p_cal blows up before t_target. Throws Error(NoBracket) after
/// max_doublings failures.
double calibrate_amplitude(const ProblemParams& base, double p_cal, double t_target, double a0,
                           const ScanSetup& setup, int max_doublings = 40);

}  // namespace fujita
