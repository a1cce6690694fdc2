#include "fujita/mild_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fujita/csv.hpp"
#include "fujita/cutoffs.hpp"
#include "fujita/errors.hpp"
#include "fujita/fit.hpp"

namespace fujita {

namespace {

constexpr double kOverflow = 1e30;

void append_uniform(std::vector<double>& times, double a, double b, std::size_t substeps) {
  for (std::size_t s = 1; s <= substeps; ++s)
    times.push_back(s == substeps ? b : a + (b - a) * static_cast<double>(s) / static_cast<double>(substeps));
}

double time_power_integral(double a, double b, double rho) {
  return (std::pow(b, 1.0 + rho) - std::pow(a, 1.0 + rho)) / (1.0 + rho);
}

Trajectory add(const Trajectory& a, const Trajectory& b) {
  Trajectory out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out.fields[k] += b.fields[k];
  return out;
}

}  // namespace

TimeGrid TimeGrid::log_spaced(double T, std::size_t n_times, double ratio, std::size_t substeps) {
  if (!(T > 0.0) || n_times < 2 || substeps < 1 || !(ratio > 0.0 && ratio < 1.0))
    throw Error(ErrorCode::ConfigError, "log time grid needs T > 0, n_times >= 2, substeps >= 1, 0 < ratio < 1");
  TimeGrid g;
  g.times.push_back(0.0);
  double prev = 0.0;
  for (double t : fujita::log_spaced(ratio * T, T, n_times)) {
    append_uniform(g.times, prev, t, substeps);
    g.report.push_back(g.times.size() - 1);
    prev = t;
  }
  return g;
}

TimeGrid TimeGrid::uniform(double T, std::size_t n, std::size_t substeps) {
  if (!(T > 0.0) || n < 2 || substeps < 1)
    throw Error(ErrorCode::ConfigError, "uniform time grid needs T > 0, n >= 2, substeps >= 1");
  TimeGrid g;
  g.times.push_back(0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    append_uniform(g.times, T * static_cast<double>(k - 1) / static_cast<double>(n),
                   k == n ? T : T * static_cast<double>(k) / static_cast<double>(n), substeps);
    g.report.push_back(g.times.size() - 1);
  }
  return g;
}

DuhamelMap::DuhamelMap(SemigroupOp op, TimeGrid grid)
    : op_(std::move(op)),
      grid_(std::move(grid)),
      nonlinear_weight_(op_.source_weights(op_.params().sigma2)),
      forcing_weight_(op_.source_weights(0.0)) {}

Trajectory DuhamelMap::zeros() const {
  Trajectory out;
  out.report = grid_.report;
  const RadialField z = RadialField::zeros(op_.grid(), op_.dimension());
  for (double t : grid_.times) out.push(t, z);
  return out;
}

Trajectory DuhamelMap::run(const RadialField* u0, const Trajectory* u, const RadialProfile* w) const {
  const ProblemParams& pr = op_.params();
  const GridPtr& g = op_.grid();
  const std::size_t m = g->size();
  if (u && u->size() != grid_.times.size()) throw std::invalid_argument("trajectory does not match the time grid");

  std::vector<double> forcing;
  if (w) {
    forcing.resize(m);
    for (std::size_t i = 0; i < m; ++i) forcing[i] = (*w)(g->r(i)) * forcing_weight_[i];
  }

  Trajectory out;
  out.report = grid_.report;
  RadialField v = u0 ? *u0 : RadialField::zeros(g, op_.dimension());
  out.push(0.0, v);
  for (std::size_t j = 0; j + 1 < grid_.times.size(); ++j) {
    const double a = grid_.times[j], b = grid_.times[j + 1];
    const double h = b - a;
    v = op_.apply(v, 0.5 * h);
    if (u) {
      const auto& lo = u->fields[j].values;
      const auto& hi = u->fields[j + 1].values;
      for (std::size_t i = 0; i < m; ++i)
        v.values[i] += h * nonlinear_weight_[i] * std::pow(std::abs(0.5 * (lo[i] + hi[i])), pr.p);
    }
    if (w) {
      const double weight = time_power_integral(a, b, pr.rho);
      for (std::size_t i = 0; i < m; ++i) v.values[i] += weight * forcing[i];
    }
    v = op_.apply(v, 0.5 * h);
    if (u && !(v.max_abs() <= kOverflow))
      throw Error(ErrorCode::Overflow, "Duhamel iterate exceeded 1e30 at t = " + format_number(b));
    out.push(b, v);
  }
  return out;
}

Trajectory DuhamelMap::free_evolution(const RadialField& u0) const { return run(&u0, nullptr, nullptr); }

Trajectory DuhamelMap::duhamel_forcing(const RadialProfile& w) const { return run(nullptr, nullptr, &w); }

Trajectory DuhamelMap::nonlinear(const Trajectory& u) const { return run(nullptr, &u, nullptr); }

Trajectory DuhamelMap::picard_step(const Trajectory& u, const RadialField& u0, const RadialProfile& w) const {
  return run(&u0, &u, &w);
}

void resolve_norm(const ProblemParams& params, const MildConfig& cfg, double& r, double& mu) {
  r = cfg.r > 0.0 ? cfg.r : default_r(params);
  mu = derived_weights(params, r).mu;
}

namespace {

GlobalSolve iterate(const DuhamelMap& map, const Trajectory& base, const MildConfig& cfg, double r, double mu) {
  if (cfg.max_picard < 2 || !(cfg.picard_tol > 0.0))
    throw Error(ErrorCode::ConfigError, "need max_picard >= 2 and picard_tol > 0");
  GlobalSolve out;
  out.r = r;
  out.mu = mu;
  Trajectory u = map.zeros();
  double prev = 0.0;
  int non_contracting = 0;
  for (int n = 1; n <= cfg.max_picard; ++n) {
    Trajectory next = add(base, map.nonlinear(u));
    const double diff = x_distance(next, u, r, mu);
    PicardRecord rec{n, diff, n > 1 && prev > 0.0 ? diff / prev : 0.0};
    out.history.push_back(rec);
    u = std::move(next);
    if (diff < cfg.picard_tol) {
      out.converged = true;
      break;
    }
    non_contracting = n > 1 && rec.ratio >= 1.0 ? non_contracting + 1 : 0;
    if (non_contracting >= 3)
      throw Error(ErrorCode::NotContracting, "Picard ratios >= 1 for three consecutive iterations");
    prev = diff;
  }
  out.residual = x_distance(add(base, map.nonlinear(u)), u, r, mu);
  out.trajectory = std::move(u);
  return out;
}

}  // namespace

GlobalSolve solve_global_small(const SemigroupOp& op, const RadialField& u0, const RadialProfile& w,
                               const MildConfig& cfg) {
  const ProblemParams& pr = op.params();
  if (!global_theory_applies(pr))
    throw Error(ErrorCode::HypothesisViolation,
                "global theory needs sigma2 < sigma1 <= 0, -1 < rho < 0, p > p* (" + describe(pr) + ")");
  double r = 0.0, mu = 0.0;
  resolve_norm(pr, cfg, r, mu);
  const DuhamelMap map(op, TimeGrid::log_spaced(cfg.T_max, cfg.n_times, cfg.t_min_ratio, cfg.substeps));
  const Trajectory base = add(map.free_evolution(u0), map.duhamel_forcing(w));
  return iterate(map, base, cfg, r, mu);
}

std::vector<double> contraction_ladder(const SemigroupOp& op, const RadialField& u0, const RadialProfile& w,
                                       const MildConfig& cfg, const std::vector<double>& scales) {
  std::vector<double> out;
  for (double c : scales) {
    try {
      const GlobalSolve s = solve_global_small(op, c * u0, [&](double r) { return c * w(r); }, cfg);
      double worst = 0.0;
      for (std::size_t k = 1; k < s.history.size(); ++k) worst = std::max(worst, s.history[k].ratio);
      out.push_back(worst);
    } catch (const Error&) {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  return out;
}

double local_radius(const LocalSolve& s, const ProblemParams& params, double T) {
  return s.C1 * std::pow(T, 1.0 - s.alpha) * std::pow(s.M, params.p) +
         s.C2 * s.f_norm * std::pow(T, params.rho + 1.0);
}

namespace {

double sup_norm(const Trajectory& u, double q) {
  double sup = 0.0;
  for (const auto& f : u.fields) sup = std::max(sup, lq_norm(f, q, 0.0));
  return sup;
}

double sup_distance(const Trajectory& a, const Trajectory& b, double q) {
  double sup = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sup = std::max(sup, lq_norm(a.fields[k] - b.fields[k], q, 0.0));
  return sup;
}

struct LocalRun {
  Trajectory u;
  int iterations = 0;
};

LocalRun local_picard(const DuhamelMap& map, const Trajectory& base, double q, const LocalOptions& opt) {
  LocalRun run;
  run.u = map.zeros();
  const double scale = std::max(sup_norm(base, q), std::numeric_limits<double>::min());
  double prev = 0.0;
  int bad = 0;
  for (int n = 1; n <= opt.max_picard; ++n) {
    Trajectory next = add(base, map.nonlinear(run.u));
    const double diff = sup_distance(next, run.u, q);
    run.u = std::move(next);
    run.iterations = n;
    if (diff <= opt.picard_tol * scale) return run;
    bad = n > 1 && diff >= prev ? bad + 1 : 0;
    if (bad >= 3) throw Error(ErrorCode::NotContracting, "local Picard iteration is not contracting");
    prev = diff;
  }
  throw Error(ErrorCode::NotContracting, "local Picard iteration did not reach tolerance");
}

std::vector<double> report_norms(const Trajectory& u, double q) {
  std::vector<double> out{lq_norm(u.fields.front(), q, 0.0)};
  for (std::size_t k : u.report) out.push_back(lq_norm(u.fields[k], q, 0.0));
  return out;
}

}  // namespace

LocalSolve solve_local_Lq(const SemigroupOp& op, const RadialField& u0, const RadialProfile& w, double q,
                          double horizon_guess, const LocalOptions& options) {
  const ProblemParams& pr = op.params();
  LocalSolve s;
  s.alpha = local_alpha(pr, q);
  if (!(horizon_guess > 0.0)) throw Error(ErrorCode::ConfigError, "horizon_guess must be positive");

  RadialField f = RadialField::sample(op.grid(), op.dimension(), w);
  for (std::size_t i = 0; i < f.size(); ++i) f.values[i] *= std::pow(op.grid()->r(i), -pr.sigma1);
  s.f_norm = lq_norm(f, q, 0.0);

  // Probe run on the guessed horizon.
  {
    const DuhamelMap probe(op, TimeGrid::uniform(horizon_guess, options.n_report, options.substeps));
    const Trajectory free = probe.free_evolution(u0);
    const Trajectory forced = probe.duhamel_forcing(w);
    const double sup_free = sup_norm(free, q);
    const Trajectory nl = probe.nonlinear(free);
    for (std::size_t k : probe.grid().report) {
      const double t = probe.grid().times[k];
      if (sup_free > 0.0)
        s.C1 = std::max(s.C1, lq_norm(nl.fields[k], q, 0.0) / (std::pow(t, 1.0 - s.alpha) * std::pow(sup_free, pr.p)));
      if (s.f_norm > 0.0)
        s.C2 = std::max(s.C2, lq_norm(forced.fields[k], q, 0.0) / (s.f_norm * std::pow(t, pr.rho + 1.0)));
    }
    s.M = 2.0 * (sup_free > 0.0 ? sup_free : sup_norm(forced, q));
  }

  const double t_floor = 1e-6 * horizon_guess;
  if (s.M == 0.0) {
    s.T = horizon_guess;
  } else if (local_radius(s, pr, horizon_guess) <= 0.5 * s.M) {
    s.T = horizon_guess;
  } else if (local_radius(s, pr, t_floor) > 0.5 * s.M) {
    throw Error(ErrorCode::NoValidT, "R(T) > M/2 down to T = " + format_number(t_floor));
  } else {
    double lo = std::log(t_floor), hi = std::log(horizon_guess);
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (local_radius(s, pr, std::exp(mid)) <= 0.5 * s.M ? lo : hi) = mid;
    }
    s.T = std::exp(lo);
  }

  auto solve_on = [&](std::size_t substeps) {
    const DuhamelMap map(op, TimeGrid::uniform(s.T, options.n_report, substeps));
    const Trajectory base = add(map.free_evolution(u0), map.duhamel_forcing(w));
    return local_picard(map, base, q, options);
  };
  LocalRun coarse = solve_on(options.substeps);
  const LocalRun fine = solve_on(2 * options.substeps);
  s.picard_iterations = coarse.iterations;

  s.norms = report_norms(coarse.u, q);
  const std::vector<double> fine_norms = report_norms(fine.u, q);
  for (std::size_t k = 0; k < s.norms.size(); ++k)
    s.scheme_tol = std::max(s.scheme_tol, std::abs(s.norms[k] - fine_norms[k]));
  for (std::size_t k = 1; k + 1 < s.norms.size(); ++k)
    s.max_defect = std::max(s.max_defect, std::abs(s.norms[k] - 0.5 * (s.norms[k - 1] + s.norms[k + 1])));
  s.continuous = s.max_defect <= 5.0 * s.scheme_tol;

  // Keep t = 0 and the report frames.
  Trajectory out;
  out.push(0.0, coarse.u.fields.front());
  for (std::size_t k : coarse.u.report) out.push(coarse.u.times[k], coarse.u.fields[k]);
  s.trajectory = std::move(out);
  return s;
}

WeakResidual weak_form_residual(const Trajectory& u, const RadialProfile& w, const ProblemParams& params,
                                const TestFunction& zeta) {
  if (u.empty() || u.times.back() < kPsiFall.hi * zeta.T || u.times.front() > kPsiRise.lo * zeta.T)
    throw std::invalid_argument("trajectory must cover the support of the test function");
  const RadialGrid& g = *u.fields.front().grid;
  const std::size_t m = g.size();
  const double n = params.N;
  const double omega = sphere_area(n);

  std::vector<double> sp(m), lap(m), wr(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double r = g.r(i);
    const Jet j = phi(r / zeta.rho);
    sp[i] = j.value;
    lap[i] = j.d2 / (zeta.rho * zeta.rho) + (n - 1.0) / r * j.d1 / zeta.rho;
    wr[i] = w(r);
  }

  // Four time series, integrated in r at every frame.
  std::vector<double> terms[4];
  for (auto& v : terms) v.resize(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double t = u.times[k];
    const Jet jt = psi(t / zeta.T);
    const double forcing_t = t > 0.0 ? std::pow(t, params.rho) : 0.0;
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    auto integrand = [&](std::size_t i, int which) {
      const double r = g.r(i);
      const double v = u.fields[k].values[i];
      const double meas = std::pow(r, n - 1.0);
      switch (which) {
        case 0: return std::pow(r, params.sigma2) * std::pow(std::abs(v), params.p) * jt.value * sp[i] * meas;
        case 1: return jt.value == 0.0 ? 0.0 : forcing_t * wr[i] * jt.value * sp[i] * meas;
        case 2: return v * jt.value * lap[i] * meas;
        default: return std::pow(r, params.sigma1) * v * jt.d1 / zeta.T * sp[i] * meas;
      }
    };
    for (int which = 0; which < 4; ++which)
      for (std::size_t i = 0; i + 1 < m; ++i)
        acc[which] += 0.5 * (integrand(i, which) + integrand(i + 1, which)) * (g.r(i + 1) - g.r(i));
    for (int which = 0; which < 4; ++which) terms[which][k] = omega * acc[which];
  }

  WeakResidual out;
  for (const auto& series : terms) {
    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < u.size(); ++k)
      integral += 0.5 * (series[k] + series[k + 1]) * (u.times[k + 1] - u.times[k]);
    out.residual += integral;
    out.scale += std::abs(integral);
  }
  return out;
}

std::string trajectory_csv(const Trajectory& u, const ProblemParams& params, double r, double mu) {
  CsvWriter csv(describe(params) + " r=" + format_number(r) + " mu=" + format_number(mu),
                {"t", "Lr_norm", "weighted_norm", "max_value"});
  for (std::size_t k : u.report_indices()) {
    const double t = u.times[k];
    const double norm = lq_norm(u.fields[k], r, 0.0);
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : u.fields[k].values) mx = std::max(mx, v);
    csv.add_row(std::vector<double>{t, norm, std::pow(t, mu) * norm, mx});
  }
  return csv.str();
}

std::string convergence_csv(const GlobalSolve& s, const ProblemParams& params) {
  CsvWriter csv(describe(params) + " r=" + format_number(s.r) + " mu=" + format_number(s.mu),
                {"iteration", "x_norm_diff", "ratio"});
  for (const auto& h : s.history)
    csv.add_row(std::vector<double>{static_cast<double>(h.iteration), h.x_norm_diff, h.ratio});
  return csv.str();
}

}  // namespace fujita
