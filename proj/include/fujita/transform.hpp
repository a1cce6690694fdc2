#pragma once

// Radial change of variables taking
//
//     u_t = r^{-sigma1}(u_rr + (N-1)/r u_r) + r^{sigma2-sigma1}|u|^p + t^rho r^{-sigma1} w(r)
//
// to the Hardy-Henon form in effective dimension N-bar,
//
//     v_tau = v_ss + (N-bar - 1)/s v_s + s^{sigma-bar}|v|^p + tau^rho W(s),
//
// through u(t, r) = v(tau, s), s = theta^{-2/(2+sigma-bar)} r^theta, tau = Lambda t.

#include <vector>

#include "fujita/exponents.hpp"
#include "fujita/grid.hpp"
#include "fujita/trajectory.hpp"

namespace fujita {

struct TransformParams {
  double theta = 1.0;      // 1 + sigma1/2
  double sigma_bar = 0.0;  // 2(sigma2 - sigma1)/(2 + sigma1)
  double N_bar = 3.0;      // 2(N + sigma1)/(2 + sigma1)
  double Lambda = 1.0;     // theta^{2 sigma-bar/(2 + sigma-bar)}
  double s_scale = 1.0;    // theta^{-2/(2 + sigma-bar)}, so s = s_scale r^theta
};

/// Throws Error(DegenerateTransform) when 2 + sigma-bar = 0.
TransformParams transform_params(const ProblemParams& params);

double to_s(const TransformParams& tp, double r);
double to_r(const TransformParams& tp, double s);

struct TimedField {
  RadialField field;
  double time = 0.0;
};

/// Pointwise carry v(tau, s_i) = u(t, r_i) onto the mapped grid.
TimedField to_transformed(const TimedField& u, const ProblemParams& params);
/// Exact inverse of to_transformed.
TimedField from_transformed(const TimedField& v, const ProblemParams& params);

/// Forcing of the transformed equation, W(s) = Lambda^{-rho-1} r(s)^{-sigma1} w(r(s)).
RadialProfile forcing_W(const RadialProfile& w, const ProblemParams& params);

struct ResidualRow {
  double time = 0.0;         // transformed time tau
  double residual_L2 = 0.0;  // omega * int residual^2 s^{N-bar - 1} ds over interior nodes, square-rooted
  double scale_L2 = 0.0;     // same norm of the largest individual term, for relative readings
  std::size_t n_interior = 0;
};

/// Transforms a numerical solution of the original radial equation and
/// evaluates the residual of the transformed equation by centered
/// differences (second order on nonuniform nodes in s and tau) at the stored
/// frames nearest to each test time. Each chosen frame needs a neighbour on
/// both sides. Only nodes whose original radius lies in [r_lo, r_hi] are
/// used, never the first or last node. Throws
/// Error(InsufficientResolution) when fewer than 5 interior nodes remain.
std::vector<ResidualRow> residual_check(const Trajectory& u, const RadialProfile& w, const ProblemParams& params,
                                        const std::vector<double>& test_times, double r_lo = 0.0,
                                        double r_hi = 1e300);

}  // namespace fujita
