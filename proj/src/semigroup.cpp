#include "fujita/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fujita/csv.hpp"
#include "fujita/errors.hpp"

namespace fujita {

namespace {

// int_a^b r^{k-1} dr for k > 0 (a may be 0).
double power_integral(double a, double b, double k) { return (std::pow(b, k) - std::pow(a, k)) / k; }

}  // namespace

SemigroupOp::SemigroupOp(GridPtr grid, const ProblemParams& params, SemigroupOptions options)
    : grid_(std::move(grid)), params_(params), options_(options) {
  if (!(params_.N + params_.sigma1 > 0.0))
    throw Error(ErrorCode::ConditionViolation, "N + sigma1 must be positive");
  if (!(options_.dt_max > 0.0)) throw std::invalid_argument("dt_max must be positive");
  const RadialGrid& g = *grid_;
  const std::size_t m = g.size();
  const double n = params_.N;
  const auto& f = g.faces();

  volume_.resize(m);
  for (std::size_t i = 0; i < m; ++i) volume_[i] = power_integral(f[i], f[i + 1], n + params_.sigma1);

  conductance_.resize(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double a = g.r(i), b = g.r(i + 1);
    const double resistance = params_.N == 2 ? std::log(b / a) : (std::pow(b, 2.0 - n) - std::pow(a, 2.0 - n)) / (2.0 - n);
    conductance_[i] = 1.0 / resistance;
  }
}

void SemigroupOp::implicit_solve(std::span<double> rhs, double dt) const {
  // (V + dt K) u = V rhs on the unknowns 0..M-2; u_{M-1} = 0.
  const std::size_t m = grid_->size();
  const std::size_t n = m - 1;
  thread_local std::vector<double> c_prime;
  c_prime.resize(n);
  const auto& k = conductance_;

  auto diag = [&](std::size_t i) { return volume_[i] + dt * ((i > 0 ? k[i - 1] : 0.0) + k[i]); };

  double denom = diag(0);
  if (!(denom > 0.0)) throw Error(ErrorCode::StepFailure, "singular tridiagonal pivot");
  c_prime[0] = -dt * k[0] / denom;
  rhs[0] = volume_[0] * rhs[0] / denom;
  for (std::size_t i = 1; i < n; ++i) {
    const double sub = -dt * k[i - 1];
    denom = diag(i) - sub * c_prime[i - 1];
    if (!(denom > 0.0) || !std::isfinite(denom)) throw Error(ErrorCode::StepFailure, "singular tridiagonal pivot");
    c_prime[i] = i + 1 < n ? -dt * k[i] / denom : 0.0;
    rhs[i] = (volume_[i] * rhs[i] - sub * rhs[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c_prime[i] * rhs[i + 1];
  rhs[m - 1] = 0.0;
}

RadialField SemigroupOp::implicit_step(const RadialField& field, double dt) const {
  RadialField out = field;
  implicit_solve(out.values, dt);
  return out;
}

void SemigroupOp::cn_step(std::vector<double>& u, double dt) const {
  // (V + dt/2 K) u' = (V - dt/2 K) u, written as (I - dt/2 L) u' = u + dt/2 L u.
  const std::size_t m = u.size();
  thread_local std::vector<double> rhs;
  rhs.resize(m);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    double flux = -conductance_[i] * (u[i + 1] - u[i]);
    if (i > 0) flux += conductance_[i - 1] * (u[i] - u[i - 1]);
    rhs[i] = u[i] - 0.5 * dt * flux / volume_[i];
  }
  rhs[m - 1] = 0.0;
  implicit_solve(rhs, 0.5 * dt);
  u.swap(rhs);
}

RadialField SemigroupOp::step(const RadialField& field, double dt) const {
  if (options_.scheme == TimeScheme::ImplicitEuler) return implicit_step(field, dt);
  RadialField out = field;
  cn_step(out.values, dt);
  return out;
}

RadialField SemigroupOp::apply(const RadialField& field, double t) const {
  if (t < 0.0) throw std::invalid_argument("apply: negative time");
  if (t == 0.0) return field;
  const auto steps = std::max<std::size_t>(options_.min_steps, static_cast<std::size_t>(std::ceil(t / options_.dt_max)));
  const double dt = t / static_cast<double>(steps);
  RadialField out = field;
  if (options_.scheme == TimeScheme::ImplicitEuler) {
    for (std::size_t s = 0; s < steps; ++s) implicit_solve(out.values, dt);
    return out;
  }
  // Crank-Nicolson with two implicit half steps replacing the first step
  // to damp the stiff modes of rough data.
  implicit_solve(out.values, 0.5 * dt);
  implicit_solve(out.values, 0.5 * dt);
  for (std::size_t s = 1; s < steps; ++s) cn_step(out.values, dt);
  if (!out.finite()) throw Error(ErrorCode::StepFailure, "non-finite values after semigroup step");
  return out;
}

std::vector<RadialField> SemigroupOp::evolve(const RadialField& field, std::span<const double> times) const {
  std::vector<RadialField> out;
  out.reserve(times.size());
  RadialField current = field;
  double t = 0.0;
  for (double target : times) {
    if (target < t) throw std::invalid_argument("evolve: times must be increasing");
    current = apply(current, target - t);
    t = target;
    out.push_back(current);
  }
  return out;
}

RadialField SemigroupOp::generator(const RadialField& field) const {
  RadialField out = RadialField::zeros(field.grid, field.dimension);
  const auto& u = field.values;
  const std::size_t m = u.size();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    double flux = conductance_[i] * (u[i + 1] - u[i]);
    if (i > 0) flux -= conductance_[i - 1] * (u[i] - u[i - 1]);
    out.values[i] = flux / volume_[i];
  }
  return out;
}

double SemigroupOp::weighted_mass(const RadialField& field) const {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < field.size(); ++i) sum += volume_[i] * field.values[i];
  return sphere_area(dimension()) * sum;
}

std::vector<double> SemigroupOp::source_weights(double e) const {
  const double k = params_.N + e;
  if (!(k > 0.0)) throw Error(ErrorCode::ConditionViolation, "source weight r^e not locally integrable");
  const auto& f = grid_->faces();
  std::vector<double> w(volume_.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = power_integral(f[i], f[i + 1], k) / volume_[i];
  return w;
}

double SlopeStudy::relative_error() const {
  if (theory_exponent == 0.0) return std::abs(fitted_exponent);
  return std::abs(fitted_exponent - theory_exponent) / std::abs(theory_exponent);
}

double smoothing_exponent(const ProblemParams& params, double a, double b) {
  return -(params.N / params.A()) * (1.0 / a - 1.0 / b);
}

double weighted_smoothing_exponent(const ProblemParams& params, double q1, double q2, double gamma) {
  return smoothing_exponent(params, q1, q2) - gamma / params.A();
}

namespace {

SlopeStudy run_study(const SemigroupOp& op, const RadialField& source, double q, std::span<const double> t_list) {
  if (t_list.size() < 2) throw std::invalid_argument("slope study needs at least two times");
  SlopeStudy s;
  s.q = q;
  s.times.assign(t_list.begin(), t_list.end());
  for (const auto& f : op.evolve(source, t_list)) s.norms.push_back(lq_norm(f, q, 0.0));
  const LinearFit fit = fit_loglog(s.times, s.norms);
  s.fitted_exponent = fit.slope;
  s.r_squared = fit.r_squared;
  return s;
}

}  // namespace

SlopeStudy smoothing_slope(const SemigroupOp& op, double a, double b, const RadialProfile& source,
                           std::span<const double> t_list) {
  const ProblemParams& pr = op.params();
  const double upper = 1.0 + pr.sigma1 / pr.N;
  if (!(a > 1.0 && b >= a && std::isfinite(b) && 1.0 / a < upper)) {
    throw Error(ErrorCode::ConditionViolation, "(a, b) = (" + format_number(a) + ", " + format_number(b) +
                                                   ") violates 1/b <= 1/a < 1 + sigma1/N");
  }
  const RadialField field = RadialField::sample(op.grid(), op.dimension(), source);
  SlopeStudy s = run_study(op, field, b, t_list);
  s.theory_exponent = smoothing_exponent(pr, a, b);
  return s;
}

SlopeStudy weighted_smoothing_check(const SemigroupOp& op, double q1, double q2, double gamma,
                                    const RadialProfile& source, std::span<const double> t_list) {
  const ProblemParams& pr = op.params();
  const double n = pr.N;
  const double mid = gamma / n + 1.0 / q1;
  if (!(q1 > 1.0 && q2 > 1.0 && std::isfinite(q2) && gamma >= 0.0 && gamma < n && 1.0 / q2 < mid &&
        mid < 1.0 + pr.sigma1 / n)) {
    throw Error(ErrorCode::ConditionViolation,
                "(q1, q2, gamma) = (" + format_number(q1) + ", " + format_number(q2) + ", " + format_number(gamma) +
                    ") violates 0 < 1/q2 < gamma/N + 1/q1 < 1 + sigma1/N");
  }
  RadialField field = RadialField::sample(op.grid(), op.dimension(), source);
  for (std::size_t i = 0; i < field.size(); ++i) field.values[i] *= std::pow(field.grid->r(i), -gamma);
  SlopeStudy s = run_study(op, field, q2, t_list);
  s.gamma = gamma;
  s.theory_exponent = weighted_smoothing_exponent(pr, q1, q2, gamma);
  return s;
}

double scaling_identity_check(const SemigroupOp& op, double lambda, double t, const RadialProfile& source) {
  if (!(lambda > 0.0) || !(t > 0.0)) throw std::invalid_argument("scaling check needs lambda > 0, t > 0");
  const GridPtr& g = op.grid();
  const double dim = op.dimension();

  const RadialField dilated = RadialField::sample(g, dim, [&](double r) { return source(lambda * r); });
  const RadialField lhs_raw = op.apply(dilated, t);
  RadialField lhs = RadialField::zeros(g, dim);
  for (std::size_t i = 0; i < lhs.size(); ++i) lhs.values[i] = interpolate(lhs_raw, g->r(i) / lambda);

  const RadialField phi = RadialField::sample(g, dim, source);
  const RadialField rhs = op.apply(phi, std::pow(lambda, op.params().A()) * t);

  const double spread = std::max(lambda, 1.0 / lambda);
  const double r_lo = 10.0 * spread * g->r_min();
  const double r_hi = g->r_max() / (10.0 * spread);
  const double denom = lq_norm(rhs, 2.0, 0.0, r_lo, r_hi);
  if (denom == 0.0) return 0.0;
  return lq_norm(lhs - rhs, 2.0, 0.0, r_lo, r_hi) / denom;
}

}  // namespace fujita
