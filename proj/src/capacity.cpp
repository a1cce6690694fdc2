#include "fujita/capacity.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <functional>
#include <limits>

#include "fujita/csv.hpp"
#include "fujita/cutoffs.hpp"
#include "fujita/errors.hpp"
#include "fujita/grid.hpp"

namespace fujita {

namespace {

constexpr int kPanels = 8;

double integrate(const std::function<double(double)>& f, double a, double b, int panels = 1) {
  using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  double total = 0.0;
  const double h = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + h * k;
    const double hi = k + 1 == panels ? b : lo + h;
    double err = 0.0;
    const double v = Quad::integrate(f, lo, hi, 15, 1e-12, &err);
    if (!std::isfinite(v) || err > 1e-8 * std::abs(v) + 1e-300)
      throw Error(ErrorCode::QuadratureFailure, "panel [" + format_number(lo) + ", " + format_number(hi) +
                                                    "] did not converge (error " + format_number(err) + ")");
    total += v;
  }
  return total;
}

struct Powers {
  double p;
  double pp;  // p' = p/(p-1)
};

Powers powers(const ProblemParams& params) { return {params.p, params.p / (params.p - 1.0)}; }

// int_0^T t^e psi^{p'}(t/T) dt
double psi_moment(double T, double e, double pp) {
  auto f = [&](double t) { return std::pow(t, e) * std::pow(psi(t / T).value, pp); };
  return integrate(f, kPsiRise.lo * T, kPsiRise.hi * T, kPanels) + integrate(f, kPsiRise.hi * T, kPsiFall.lo * T) +
         integrate(f, kPsiFall.lo * T, kPsiFall.hi * T, kPanels);
}

// int_0^T |d/dt psi^{p'}(t/T)|^{p'} psi^{-p'/(p-1)}(t/T) dt. The powers of psi
// cancel identically, leaving (p'/T)^{p'} |psi'|^{p'}.
double psi_time_factor(double T, double pp) {
  auto f = [&](double t) { return std::pow(pp / T * std::abs(psi(t / T).d1), pp); };
  return integrate(f, kPsiRise.lo * T, kPsiRise.hi * T, kPanels) + integrate(f, kPsiFall.lo * T, kPsiFall.hi * T, kPanels);
}

}  // namespace

CapacityIntegrals capacity_integrals(const ProblemParams& params, double R, double T) {
  if (!(R > 1.0) || !(T > 1.0) || !(params.p > 1.0))
    throw Error(ErrorCode::HypothesisViolation, "capacity integrals need R > 1, T > 1, p > 1");
  const auto [p, pp] = powers(params);
  const double n = params.N;
  const double omega = sphere_area(n);

  CapacityIntegrals out;
  out.R = R;
  out.T = T;
  out.I_forcing = psi_moment(T, params.rho, pp);

  // Spatial factor of I_time: int Phi |x|^k dx, exact on the plateau |x| < R.
  const double k = (params.sigma1 * p - params.sigma2) / (p - 1.0);
  if (!(n + k > 0.0))
    throw Error(ErrorCode::QuadratureFailure, "|x|^" + format_number(k) + " is not integrable at the origin");
  const double plateau = std::pow(R, n + k) / (n + k);
  const double band = integrate([&](double r) { return std::pow(phi(r / R).value, 2.0 * pp) * std::pow(r, n - 1.0 + k); },
                                kPhiFall.lo * R, kPhiFall.hi * R, kPanels);
  out.I_time = psi_time_factor(T, pp) * omega * (plateau + band);

  // Spatial factor of I_space. With Phi = phi^{2p'}, Delta Phi carries
  // phi^{2p'-2}, and |Delta Phi|^{p'} Phi^{-1/(p-1)} keeps no power of phi.
  const double e = -params.sigma2 / (p - 1.0);
  auto space = [&](double r) {
    const Jet j = phi(r / R);
    const double b = (2.0 * pp - 1.0) * j.d1 * j.d1 + j.value * j.d2 + (n - 1.0) * (R / r) * j.value * j.d1;
    return std::pow(2.0 * pp / (R * R) * std::abs(b), pp) * std::pow(r, n - 1.0 + e);
  };
  out.I_space = psi_moment(T, 0.0, pp) * omega * integrate(space, kPhiFall.lo * R, kPhiFall.hi * R, kPanels);
  return out;
}

double capacity_theory_time(const ProblemParams& params, TimeRule rule, double m) {
  const double p = params.p;
  const double tail = (params.sigma1 * p - params.sigma2) / (p - 1.0) + params.N;
  if (rule == TimeRule::Parabolic) return capacity_theory_space(params, rule, m);
  return -params.rho * m - p * m / (p - 1.0) + tail;
}

double capacity_theory_space(const ProblemParams& params, TimeRule rule, double m) {
  const double p = params.p;
  const double tail = params.N - (2.0 * p + params.sigma2) / (p - 1.0);
  if (rule == TimeRule::Parabolic) return tail - params.rho * params.A();
  return -params.rho * m + tail;
}

CapacityFit capacity_exponent_fit(const ProblemParams& params, const std::vector<double>& R_list, TimeRule rule,
                                  double m) {
  if (R_list.size() < 3) throw Error(ErrorCode::ConfigError, "capacity fit needs at least 3 radii");
  double lo = R_list.front(), hi = R_list.front();
  for (double R : R_list) {
    lo = std::min(lo, R);
    hi = std::max(hi, R);
  }
  if (std::log10(hi / lo) < 1.5 - 1e-12) throw Error(ErrorCode::ConfigError, "R_list must span at least 1.5 decades");

  CapacityFit fit;
  fit.rule = rule;
  if (rule == TimeRule::Power) {
    if (!(m > 0.0)) {
      if (!(params.rho > 0.0)) throw Error(ErrorCode::ConfigError, "T = R^m needs m > 0 or rho > 0 for m = N/rho");
      m = params.N / params.rho;
    }
    fit.m = m;
  }
  std::vector<double> time_ratio, space_ratio;
  for (double R : R_list) {
    const double T = rule == TimeRule::Parabolic ? std::pow(R, params.A()) : std::pow(R, m);
    const CapacityIntegrals row = capacity_integrals(params, R, T);
    fit.rows.push_back(row);
    time_ratio.push_back(row.I_time / row.I_forcing);
    space_ratio.push_back(row.I_space / row.I_forcing);
  }
  fit.time_fit = fit_loglog(R_list, time_ratio);
  fit.space_fit = fit_loglog(R_list, space_ratio);
  fit.theory_time = capacity_theory_time(params, rule, m);
  fit.theory_space = capacity_theory_space(params, rule, m);
  fit.nonexistence_predicted = fit.theory_time < 0.0 && fit.theory_space < 0.0;
  fit.slopes_negative = fit.time_fit.slope < 0.0 && fit.space_fit.slope < 0.0;
  if (fit.time_fit.r_squared < 0.99 || fit.space_fit.r_squared < 0.99)
    throw Error(ErrorCode::PoorFit, "capacity regression R^2 below 0.99");
  return fit;
}

double log_capacity_space(const ProblemParams& params, double R) {
  const auto [p, pp] = powers(params);
  const double n = params.N;
  const double L = 0.5 * std::log(R);
  const double e = -params.sigma2 / (p - 1.0);
  // Integrated in u = log r over [L, 2L], where the cutoff variable is u/L - 1.
  auto f = [&](double u) {
    const Jet j = log_phi(u / L - 1.0);
    const double b = (2.0 * pp - 1.0) * j.d1 * j.d1 + j.value * j.d2 + (n - 2.0) * L * j.value * j.d1;
    const double r2 = std::exp(2.0 * u);
    return std::pow(2.0 * pp / (r2 * L * L) * std::abs(b), pp) * std::exp(u * (n + e));
  };
  return sphere_area(n) * integrate(f, L, 2.0 * L, kPanels);
}

LogCapacityFit log_capacity_fit(const ProblemParams& params, const std::vector<double>& R_list) {
  const double n = params.N;
  if (params.rho != 0.0 || params.N < 3)
    throw Error(ErrorCode::HypothesisViolation, "log cutoff case needs rho = 0 and N >= 3");
  const double p_crit = (n + params.sigma2) / (n - 2.0);
  if (std::abs(params.p - p_crit) > 1e-12 * p_crit)
    throw Error(ErrorCode::HypothesisViolation, "log cutoff case needs p = (N + sigma2)/(N - 2) = " + format_number(p_crit));
  if (R_list.size() < 5) throw Error(ErrorCode::ConfigError, "log capacity fit needs at least 5 radii");

  LogCapacityFit fit;
  fit.theory = (2.0 - n) / (2.0 + params.sigma2);
  const auto rows = static_cast<Eigen::Index>(R_list.size());
  Eigen::VectorXd log_r(rows), value(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double R = R_list[static_cast<std::size_t>(i)];
    if (!(R > 1.0)) throw Error(ErrorCode::ConfigError, "log capacity fit needs R > 1");
    const double s = log_capacity_space(params, R);
    fit.R.push_back(R);
    fit.space.push_back(s);
    log_r(i) = std::log(R);
    value(i) = s;
  }
  {
    std::vector<double> x(fit.R.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::log(fit.R[i]);
    fit.raw_slope = fit_loglog(x, fit.space).slope;
  }

  // Relative residual of the best polynomial correction for a given s.
  auto solve = [&](double s, Eigen::Vector3d& coef) {
    Eigen::MatrixXd A(rows, 3);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double scaled = value(i) * std::pow(log_r(i), -s);
      for (int k = 0; k < 3; ++k) A(i, k) = std::pow(log_r(i), -k) / scaled;
    }
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(rows);
    coef = A.colPivHouseholderQr().solve(ones);
    return (A * coef - ones).squaredNorm();
  };
  Eigen::Vector3d coef;
  double best_s = -4.0, best = std::numeric_limits<double>::infinity();
  for (double s = -4.0; s <= 2.0 + 1e-12; s += 0.01) {
    const double r = solve(s, coef);
    if (r < best) {
      best = r;
      best_s = s;
    }
  }
  const auto refined = boost::math::tools::brent_find_minima([&](double s) { return solve(s, coef); }, best_s - 0.01,
                                                             best_s + 0.01, 52);
  fit.fitted = refined.first;
  solve(fit.fitted, coef);

  Eigen::VectorXd y = value.array().log();
  Eigen::VectorXd model(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double lr = log_r(i);
    model(i) = fit.fitted * std::log(lr) + std::log(std::abs(coef(0) + coef(1) / lr + coef(2) / (lr * lr)));
  }
  const double ss_tot = (y.array() - y.mean()).square().sum();
  const double ss_res = (y - model).squaredNorm();
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  if (fit.r_squared < 0.99) throw Error(ErrorCode::PoorFit, "log capacity regression R^2 below 0.99");
  return fit;
}

}  // namespace fujita
