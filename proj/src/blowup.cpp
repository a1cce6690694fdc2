#include "fujita/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "fujita/csv.hpp"
#include "fujita/errors.hpp"

namespace fujita {

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Global: return "Global";
    case Outcome::BlownUp: return "BlownUp";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

double power_integral_in_time(double a, double b, double rho) {
  return (std::pow(b, 1.0 + rho) - std::pow(a, 1.0 + rho)) / (1.0 + rho);
}

}  // namespace

SolveOutcome integrate_nonlinear(const SemigroupOp& op, const RadialField& u0, const RadialProfile& w,
                                 const BlowupConfig& cfg) {
  const ProblemParams& pr = op.params();
  const std::size_t m = op.grid()->size();
  const std::vector<double> weight = op.source_weights(pr.sigma2);
  const std::vector<double> force_weight = op.source_weights(0.0);
  std::vector<double> forcing(m);
  for (std::size_t i = 0; i < m; ++i) forcing[i] = w(op.grid()->r(i)) * force_weight[i];

  std::vector<double> samples = cfg.sample_times;
  std::sort(samples.begin(), samples.end());
  std::erase_if(samples, [&](double s) { return s <= 0.0 || s > cfg.T_max; });

  SolveOutcome out;
  out.min_dt = cfg.dt_init;
  std::vector<double> u = u0.values;
  std::vector<double> next(m);
  double t = 0.0;
  double dt_nominal = cfg.dt_init;
  double norm = 0.0;
  for (double v : u) norm = std::max(norm, std::abs(v));
  out.max_norm = norm;
  std::deque<double> history{norm};
  std::size_t next_sample = 0;

  auto finish = [&](Outcome kind, std::string note) {
    out.kind = kind;
    out.t_end = t;
    out.final_norm = norm;
    out.note = std::move(note);
    return out;
  };

  while (t < cfg.T_max) {
    if (out.steps >= cfg.max_steps) return finish(Outcome::Inconclusive, "step budget exhausted");

    double stiff = 0.0;
    for (std::size_t i = 0; i < m; ++i) stiff = std::max(stiff, weight[i] * std::pow(std::abs(u[i]), pr.p - 1.0));
    double dt = std::min({dt_nominal, cfg.dt_max, cfg.dt_rel * std::max(t, cfg.dt_init)});
    if (stiff > 0.0) dt = std::min(dt, cfg.cfl / (pr.p * stiff));
    if (dt < cfg.dt_min) {
      const bool growing = history.size() > 10 && norm >= 10.0 * history.front();
      if (growing) return finish(Outcome::BlownUp, "step below dt_min with norm growing");
      return finish(Outcome::Inconclusive, "step below dt_min without sustained growth");
    }
    const double target = next_sample < samples.size() ? samples[next_sample] : cfg.T_max;
    bool lands = false;
    if (t + dt >= target * (1.0 - 1e-14)) {
      dt = target - t;
      lands = true;
    }

    const double force_int = power_integral_in_time(t, t + dt, pr.rho);
    for (std::size_t i = 0; i < m; ++i)
      next[i] = u[i] + dt * weight[i] * std::pow(std::abs(u[i]), pr.p) + force_int * forcing[i];
    op.implicit_solve(next, dt);

    double new_norm = 0.0;
    bool finite = true;
    for (double v : next) {
      if (!std::isfinite(v)) finite = false;
      new_norm = std::max(new_norm, std::abs(v));
    }
    if (!finite || (new_norm > 2.0 * norm && norm > cfg.doubling_floor)) {
      ++out.rejected;
      dt_nominal = 0.5 * dt;
      if (dt_nominal < cfg.dt_min) {
        const bool growing = !finite || (history.size() > 10 && norm >= 10.0 * history.front());
        if (growing) return finish(Outcome::BlownUp, "step below dt_min with norm growing");
        return finish(Outcome::Inconclusive, "step rejected below dt_min");
      }
      continue;
    }

    u.swap(next);
    t = lands ? target : t + dt;
    norm = new_norm;
    ++out.steps;
    out.min_dt = std::min(out.min_dt, dt);
    out.max_norm = std::max(out.max_norm, norm);
    history.push_back(norm);
    if (history.size() > 11) history.pop_front();
    if (!lands) dt_nominal = std::min(dt_nominal * cfg.dt_growth, cfg.dt_max);

    if (lands && next_sample < samples.size()) {
      out.samples.push(t, RadialField{u0.grid, u, u0.dimension});
      ++next_sample;
    }
    if (norm > cfg.blowup_norm_cap) return finish(Outcome::BlownUp, "sup norm above cap");
  }
  return finish(Outcome::Global, "reached T_max with bounded norm");
}

namespace {

ScanPoint run_point(const ProblemParams& base, double p, double amplitude, const ScanSetup& setup) {
  ProblemParams pr = base;
  pr.p = p;
  const SemigroupOp op(setup.grid, pr, setup.semigroup);
  const RadialField u0 = RadialField::sample(setup.grid, pr.N, setup.u0);
  const RadialProfile& w = setup.w;
  const SolveOutcome o = integrate_nonlinear(op, u0, [&](double r) { return amplitude * w(r); }, setup.cfg);
  return ScanPoint{p, o.kind, o.t_end, o.max_norm, false};
}

}  // namespace

ScanResult scan_threshold(const ProblemParams& base, std::vector<double> p_grid, double amplitude,
                          const ScanSetup& setup, int bisections) {
  std::sort(p_grid.begin(), p_grid.end());
  ScanResult res;
  res.amplitude = amplitude;
  res.p_star = critical_forced(base);
  for (double p : p_grid) res.points.push_back(run_point(base, p, amplitude, setup));

  std::size_t k = res.points.size();
  for (std::size_t i = 0; i + 1 < res.points.size(); ++i) {
    if (res.points[i].outcome == Outcome::BlownUp && res.points[i + 1].outcome == Outcome::Global) {
      k = i;
      break;
    }
  }
  if (k == res.points.size())
    throw Error(ErrorCode::NoBracket, "no BlownUp -> Global transition over p in [" + format_number(p_grid.front()) +
                                          ", " + format_number(p_grid.back()) + "]");
  res.p_lo = res.points[k].p;
  res.p_hi = res.points[k + 1].p;
  for (int b = 0; b < bisections; ++b) {
    const double mid = 0.5 * (res.p_lo + res.p_hi);
    ScanPoint pt = run_point(base, mid, amplitude, setup);
    pt.bisection = true;
    res.points.push_back(pt);
    if (pt.outcome == Outcome::BlownUp) res.p_lo = mid;
    else if (pt.outcome == Outcome::Global) res.p_hi = mid;
    else break;
  }
  return res;
}

double calibrate_amplitude(const ProblemParams& base, double p_cal, double t_target, double a0,
                           const ScanSetup& setup, int max_doublings) {
  ScanSetup s = setup;
  s.cfg.T_max = t_target;
  s.cfg.sample_times.clear();
  double a = a0;
  for (int k = 0; k <= max_doublings; ++k, a *= 2.0) {
    if (run_point(base, p_cal, a, s).outcome == Outcome::BlownUp) return a;
  }
  throw Error(ErrorCode::NoBracket, "no amplitude up to " + format_number(a / 2.0) + " blows up before t = " +
                                        format_number(t_target));
}

}  // namespace fujita
