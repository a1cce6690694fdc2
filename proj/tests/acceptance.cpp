// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fujita/blowup.hpp"
#include "fujita/capacity.hpp"
#include "fujita/csv.hpp"
#include "fujita/errors.hpp"
#include "fujita/exponents.hpp"
#include "fujita/fit.hpp"
#include "fujita/mild_solver.hpp"
#include "fujita/profiles.hpp"
#include "fujita/semigroup.hpp"

using namespace fujita;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// -2 < sigma2 < sigma1 <= 0, -1 < rho < 0, p > p*.
ProblemParams random_admissible(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n(2, 8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ProblemParams pr;
  pr.N = n(rng);
  pr.sigma1 = -1.99 * u(rng);
  pr.sigma2 = -2.0 + (pr.sigma1 + 2.0) * (0.005 + 0.99 * u(rng));
  pr.rho = -(0.005 + 0.99 * u(rng));
  pr.p = critical_forced(pr).value() + 1e-6 + 5.0 * u(rng);
  return pr;
}

void exponent_identities(Verdict& v) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  int failures = 0;
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const ProblemParams pr = random_admissible(rng);
    if (!validate(pr).valid() || !(pr.p > critical_forced(pr))) {
      ++failures;
      continue;
    }
    const InverseWindow w = window_bounds(pr);
    if (w.empty()) {
      ++failures;
      continue;
    }
    try {
      const Weights x = derived_weights(pr, default_r(pr));
      const bool bounds = x.mu > 0 && x.mu < 1.0 / pr.p && x.beta > 0 && x.beta < 1 && x.delta > 0 && x.delta < 1;
      const double lhs = 1.0 - pr.p * x.mu - x.delta;
      const double e1 = std::abs(lhs + x.mu) / std::max({1.0, std::abs(lhs), std::abs(x.mu)});
      const double e2 =
          std::abs(-x.mu - (pr.rho + 1.0 - x.beta)) / std::max({1.0, std::abs(x.mu), std::abs(pr.rho + 1.0 - x.beta)});
      worst = std::max({worst, e1, e2});
      if (!bounds || e1 > 1e-12 || e2 > 1e-12) ++failures;
    } catch (const Error&) {
      ++failures;
    }
  }
  const double elapsed = seconds_since(t0);
  v.detail << "10000 tuples, failures=" << failures << ", worst identity error=" << worst << ", " << elapsed << " s";
  v.require(failures == 0, "all tuples");
  v.require(elapsed < 5.0, "runtime < 5 s");
}

void special_cases(Verdict& v) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> n_dist(3, 9);
  std::uniform_int_distribution<int> j_dist(-63, 63);
  int checked = 0, mismatches = 0;
  while (checked < 100) {
    // Dyadic rho keeps both expressions exact in binary floating point.
    const int n = n_dist(rng);
    const double rho = j_dist(rng) / 64.0;
    const double n2 = n - 2.0 * rho;
    if (!(n2 - 2.0 > 0.0)) continue;
    const ExtendedReal ps = critical_forced({n, 0.0, 0.0, rho, 2.0});
    if (!ps.is_finite() || ps.value() != n2 / (n2 - 2.0)) ++mismatches;
    ++checked;
  }
  int inf_fail = 0;
  for (double s1 : {0.0, -0.5, -1.5})
    for (double s2 : {-1.0, 0.0, 2.0})
      if (!critical_forced({2, s1, s2, 0.0, 2.0}).is_infinite()) ++inf_fail;
  int indep_fail = 0;
  for (int n = 3; n <= 9; ++n)
    for (double s1 : {0.0, -0.25, -0.5, -1.0, -1.75, -1.999})
      if (critical_forced({n, s1, 0.0, 0.0, 2.0}).value() != static_cast<double>(n) / (n - 2.0)) ++indep_fail;
  v.detail << "rho-samples mismatches=" << mismatches << "/100, N=2 finite=" << inf_fail
           << ", sigma1-dependence=" << indep_fail;
  v.require(mismatches == 0, "p*(sigma1=sigma2=0)");
  v.require(inf_fail == 0, "p*(N=2, rho=0) = inf");
  v.require(indep_fail == 0, "p*(sigma2=0, rho=0) = N/(N-2)");
}

void quadratic_certificate(Verdict& v) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int nonneg = 0, closed_fail = 0;
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const ProblemParams pr = random_admissible(rng);
    const double ps = critical_forced(pr).value();
    const double poly = quadratic_f(pr, ps);
    const double closed = quadratic_f_at_critical(pr);
    worst = std::max(worst, std::abs(poly - closed) / std::max({1.0, std::abs(poly), std::abs(closed)}));
    if (!close_rel(poly, closed, 1e-12)) ++closed_fail;
    for (int j = 0; j < 1000; ++j) {
      const double p = j == 0 ? ps : ps + 20.0 * u(rng);
      if (!(quadratic_f(pr, p) < 0.0)) ++nonneg;
    }
  }
  const double elapsed = seconds_since(t0);
  v.detail << "200 tuples x 1000 p, f>=0 count=" << nonneg << ", closed-form worst=" << worst << ", " << elapsed << " s";
  v.require(nonneg == 0, "f(p) < 0");
  v.require(closed_fail == 0, "closed form to 1e-12");
  v.require(elapsed < 5.0, "runtime < 5 s");
}

struct SlopeSetup {
  GridPtr grid = make_grid(RadialGrid::log_uniform(100.0, 1024));
  double core = 0.01;
};

std::vector<double> decade(const ProblemParams& pr) {
  const double t1 = std::pow(10.0, pr.A());
  return log_spaced(0.1 * t1, t1, 8);
}

SemigroupOp slope_op(const SlopeSetup& s, const ProblemParams& pr) {
  return SemigroupOp(s.grid, pr, {TimeScheme::ImplicitEuler, std::pow(10.0, pr.A()) / 2000.0, 1});
}

void smoothing_slopes(Verdict& v) {
  const auto t0 = Clock::now();
  const SlopeSetup setup;
  const double pairs[3][2] = {{2, 4}, {2, 6}, {3, 6}};
  double worst = 0.0;
  for (double s1 : {0.0, -0.5, -1.0}) {
    const ProblemParams pr{3, s1, 0, 0, 2};
    const SemigroupOp op = slope_op(setup, pr);
    for (const auto& ab : pairs) {
      const SlopeStudy s = smoothing_slope(op, ab[0], ab[1], power_law(3.0 / ab[0], setup.core), decade(pr));
      worst = std::max(worst, s.relative_error());
      v.require(s.relative_error() < 0.1, "sigma1=" + format_number(s1) + " a=" + format_number(ab[0]) +
                                              " b=" + format_number(ab[1]));
    }
  }
  const double elapsed = seconds_since(t0);
  v.detail << "9 slope fits, worst relative error=" << worst << ", " << elapsed << " s";
  v.require(elapsed < 120.0, "runtime < 2 min");
}

void weighted_smoothing(Verdict& v) {
  const auto t0 = Clock::now();
  const SlopeSetup setup;
  double worst = 0.0;
  for (double s1 : {0.0, -0.5, -1.0}) {
    const ProblemParams pr{3, s1, 0, 0, 2};
    const SemigroupOp op = slope_op(setup, pr);
    for (double gamma : {0.5, 1.0}) {
      const SlopeStudy s = weighted_smoothing_check(op, 4, 8, gamma, power_law(3.0 / 4.0, setup.core), decade(pr));
      worst = std::max(worst, s.relative_error());
      v.require(s.relative_error() < 0.1, "sigma1=" + format_number(s1) + " gamma=" + format_number(gamma));
    }
  }
  const double elapsed = seconds_since(t0);
  v.detail << "6 fits (q1=4, q2=8), worst relative error=" << worst << ", " << elapsed << " s";
  v.require(elapsed < 120.0, "runtime < 2 min");
}

void scaling_identity(Verdict& v) {
  const auto t0 = Clock::now();
  for (double s1 : {0.0, -1.0}) {
    double d[2];
    int k = 0;
    for (std::size_t m : {2048, 4096}) {
      const SemigroupOp op(make_grid(RadialGrid::log_uniform(20.0, m)), {3, s1, 0, 0, 2},
                           {TimeScheme::CrankNicolson, 2.0 / static_cast<double>(m), 1});
      d[k++] = scaling_identity_check(op, 2.0, 0.1, gaussian(0, 1, 1));
    }
    v.detail << "sigma1=" << s1 << ": " << d[0] << " -> " << d[1] << "; ";
    v.require(d[0] < 1e-3, "discrepancy < 1e-3 at M=2048");
    v.require(d[1] <= 0.5 * d[0], "halving under refinement");
  }
  const double elapsed = seconds_since(t0);
  v.detail << elapsed << " s";
  v.require(elapsed < 60.0, "runtime < 1 min");
}

void mass_conservation(Verdict& v) {
  const GridPtr g = make_grid(RadialGrid::log_uniform(50.0, 1024));
  double worst = 0.0;
  for (double s1 : {0.0, -0.5, -1.0}) {
    const SemigroupOp op(g, {3, s1, 0, 0, 2}, {TimeScheme::ImplicitEuler, 1e-3, 1});
    const RadialField u = RadialField::sample(g, 3, bump(1.0, 1.0));
    const double m0 = op.weighted_mass(u);
    worst = std::max(worst, std::abs(op.weighted_mass(op.apply(u, 1.0)) - m0) / m0);
  }
  v.detail << "support 1, r_max 50, worst relative drift over t=1: " << worst;
  v.require(worst < 1e-6, "drift < 1e-6");
}

void capacity_fits(Verdict& v) {
  const auto t0 = Clock::now();
  const std::vector<double> R = {10, 30, 100, 300, 1000};
  const CapacityFit sub = capacity_exponent_fit({3, 0, 0, -0.5, 1.5}, R, TimeRule::Parabolic);
  v.detail << "subcritical slopes " << sub.time_fit.slope << ", " << sub.space_fit.slope << " (R2 "
           << std::min(sub.time_fit.r_squared, sub.space_fit.r_squared) << ")";
  v.require(std::abs(sub.time_fit.slope + 2.0) <= 0.05 * 2.0, "time slope -2 +- 5%");
  v.require(std::abs(sub.space_fit.slope + 2.0) <= 0.05 * 2.0, "space slope -2 +- 5%");
  v.require(sub.time_fit.r_squared >= 0.99 && sub.space_fit.r_squared >= 0.99, "R2 >= 0.99");

  const CapacityFit pos = capacity_exponent_fit({3, 0, 0, 1.0, 2.0}, R, TimeRule::Power);
  v.detail << "; rho=1, m=" << pos.m << " slopes " << pos.time_fit.slope << ", " << pos.space_fit.slope;
  v.require(pos.time_fit.slope < 0 && pos.space_fit.slope < 0, "both slopes negative");
  v.require(std::abs(pos.time_fit.slope + 6.0) <= 0.05 * 6.0, "time slope -6 +- 5%");
  v.require(std::abs(pos.space_fit.slope + 4.0) <= 0.05 * 4.0, "space slope -4 +- 5%");
  const double elapsed = seconds_since(t0);
  v.detail << "; " << elapsed << " s";
  v.require(elapsed < 60.0, "runtime < 1 min");
}

void log_capacity(Verdict& v) {
  const LogCapacityFit f = log_capacity_fit({4, 0, 0, 0, 2}, log_spaced(1e2, 1e6, 9));
  v.detail << "fitted log(log R) exponent " << f.fitted << " (theory " << f.theory << ", R2 " << f.r_squared
           << ", plain log-log slope " << f.raw_slope << ")";
  v.require(std::abs(f.fitted + 1.0) <= 0.1, "exponent -1 +- 10%");
}

void contraction_certificate(Verdict& v) {
  const auto t0 = Clock::now();
  const ProblemParams pr{3, 0, -0.1, -0.5, 3};
  const GridPtr g = make_grid(RadialGrid::log_uniform(100.0, 512, 1e-5));
  const SemigroupOp op(g, pr, {TimeScheme::ImplicitEuler, 1e9, 1});
  const RadialField u0 = RadialField::sample(g, 3, gaussian(0, 1, 1e-3));
  const RadialProfile w = bump(2.0, 1e-3);
  MildConfig cfg;
  cfg.T_max = 10;
  cfg.substeps = 32;
  const GlobalSolve s = solve_global_small(op, u0, w, cfg);
  double max_ratio = 0.0;
  for (const auto& h : s.history)
    if (h.iteration >= 2) max_ratio = std::max(max_ratio, h.ratio);
  v.detail << "r=" << s.r << " mu=" << s.mu << ", " << s.history.size() << " iterations, max ratio " << max_ratio
           << ", residual " << s.residual;
  v.require(s.converged, "converged");
  v.require(s.history.size() >= 2 && max_ratio < 0.5, "ratios < 0.5 from iteration 2");
  v.require(s.residual < 2.0 * cfg.picard_tol, "residual < 2 tol");

  BlowupConfig bc;
  bc.T_max = 10;
  bc.dt_init = 1e-4;
  bc.dt_rel = 0.005;
  for (double t : {0.03, 0.1, 0.3, 1.0, 10.0}) bc.sample_times.push_back(s.trajectory.times[s.trajectory.nearest(t)]);
  const SolveOutcome o = integrate_nonlinear(op, u0, w, bc);
  v.require(o.kind == Outcome::Global && o.samples.size() == 5, "direct integration reaches all samples");
  double worst = 0.0;
  for (std::size_t k = 0; k < o.samples.size(); ++k) {
    const RadialField& a = s.trajectory.fields[s.trajectory.nearest(o.samples.times[k])];
    worst = std::max(worst, lq_norm(a - o.samples.fields[k], s.r) / lq_norm(o.samples.fields[k], s.r));
  }
  const double elapsed = seconds_since(t0);
  v.detail << ", worst L^r disagreement at 5 times " << worst << ", " << elapsed << " s";
  v.require(worst < 0.02, "agreement within 2%");
  v.require(elapsed < 300.0, "runtime < 5 min");
}

void threshold_scan(Verdict& v) {
  const auto t0 = Clock::now();
  const ProblemParams base{3, 0, 0, -0.5, 2};
  ScanSetup setup{make_grid(RadialGrid::log_uniform(3000.0, 512, 1e-6)),
                  {TimeScheme::ImplicitEuler, 1.0, 1},
                  zero_profile(),
                  bump(1.0, 1.0),
                  {}};
  const double amplitude = calibrate_amplitude(base, critical_forced(base).value() - 0.5, 10.0, 0.01, setup);
  setup.cfg.T_max = 1000.0;
  std::vector<double> ps;
  for (int k = 0; k <= 7; ++k) ps.push_back(1.25 + 0.25 * k);
  try {
    const ScanResult r = scan_threshold(base, ps, amplitude, setup, 4);
    double nearest = INFINITY;
    for (const auto& pt : r.points) nearest = std::min(nearest, std::abs(pt.p - 2.0));
    const bool contains = r.p_lo - 0.25 <= 2.0 && 2.0 <= r.p_hi + 0.25;
    v.detail << "amplitude " << amplitude << ", T_max 1000, bracket [" << r.p_lo << ", " << r.p_hi << "]";
    v.require(r.p_hi - r.p_lo <= 0.5, "width <= 0.5");
    v.require(contains && nearest <= 0.25, "bracket within 0.25 of p* = 2");
  } catch (const Error& e) {
    v.require(false, e.what());
  }
  const double elapsed = seconds_since(t0);
  v.detail << ", " << elapsed << " s";
  v.require(elapsed < 900.0, "runtime < 15 min");
}

void local_solver(Verdict& v) {
  const ProblemParams pr{3, 0, 0, 0, 2};
  const GridPtr g = make_grid(RadialGrid::log_uniform(50.0, 512, 1e-5));
  const SemigroupOp op(g, pr, {TimeScheme::ImplicitEuler, 1e9, 1});
  const RadialField u0 = RadialField::sample(g, 3, gaussian(0, 1, 1));
  const RadialProfile w = bump(2.0, 1.0);
  const LocalSolve s = solve_local_Lq(op, u0, w, 4.0, 1.0, {64, 4});
  v.detail << "T=" << s.T << ", max jump " << s.max_defect << " vs scheme tolerance " << s.scheme_tol;
  v.require(s.T > 0.0, "T > 0");
  v.require(s.max_defect < 5.0 * s.scheme_tol, "continuous trace");

  BlowupConfig bc;
  bc.T_max = s.T;
  bc.dt_init = 1e-5;
  bc.dt_rel = 0.002;
  bc.dt_max = s.T / 1000.0;
  bc.sample_times.assign(s.trajectory.times.begin() + 1, s.trajectory.times.end());
  const SolveOutcome o = integrate_nonlinear(op, u0, w, bc);
  v.require(o.kind == Outcome::Global && o.samples.size() + 1 == s.trajectory.size(), "direct integration reaches T");
  double worst = 0.0;
  for (std::size_t k = 0; k < o.samples.size(); ++k) {
    const RadialField& a = s.trajectory.fields[k + 1];
    worst = std::max(worst, lq_norm(a - o.samples.fields[k], 4.0) / lq_norm(o.samples.fields[k], 4.0));
  }
  v.detail << ", worst L^4 disagreement on [0, T] " << worst;
  v.require(worst < 0.02, "agreement within 2%");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria = {
      {"exponent identity suite", exponent_identities},
      {"special-case agreement", special_cases},
      {"quadratic certificate", quadratic_certificate},
      {"semigroup smoothing slopes", smoothing_slopes},
      {"weighted smoothing", weighted_smoothing},
      {"scaling identity", scaling_identity},
      {"weighted mass conservation", mass_conservation},
      {"capacity exponent fits", capacity_fits},
      {"log-cutoff critical case", log_capacity},
      {"contraction certificate", contraction_certificate},
      {"blow-up/global threshold scan", threshold_scan},
      {"local solver", local_solver},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      criteria[k].second(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    if (!v.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), v.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
