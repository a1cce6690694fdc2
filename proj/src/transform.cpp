#include "fujita/transform.hpp"

#include <algorithm>
#include <cmath>

#include "fujita/errors.hpp"

namespace fujita {

TransformParams transform_params(const ProblemParams& params) {
  TransformParams tp;
  const double a = params.A();
  tp.theta = 1.0 + 0.5 * params.sigma1;
  tp.sigma_bar = 2.0 * (params.sigma2 - params.sigma1) / a;
  tp.N_bar = 2.0 * (params.N + params.sigma1) / a;
  const double two_plus = 2.0 + tp.sigma_bar;
  if (std::abs(two_plus) < 1e-14)
    throw Error(ErrorCode::DegenerateTransform, "2 + sigma_bar = 0 (sigma2 - sigma1 = -(2 + sigma1))");
  tp.Lambda = std::pow(tp.theta, 2.0 * tp.sigma_bar / two_plus);
  tp.s_scale = std::pow(tp.theta, -2.0 / two_plus);
  return tp;
}

double to_s(const TransformParams& tp, double r) { return tp.s_scale * std::pow(r, tp.theta); }

double to_r(const TransformParams& tp, double s) { return std::pow(s / tp.s_scale, 1.0 / tp.theta); }

namespace {

GridPtr map_grid(const RadialGrid& g, double (*fn)(const TransformParams&, double), const TransformParams& tp) {
  std::vector<double> nodes(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) nodes[i] = fn(tp, g.r(i));
  // Power maps keep geometric spacing geometric.
  const auto spacing = g.spacing() == RadialGrid::Spacing::LogUniform ? RadialGrid::Spacing::LogUniform
                                                                       : RadialGrid::Spacing::Custom;
  return make_grid(RadialGrid::from_nodes(std::move(nodes), spacing));
}

}  // namespace

TimedField to_transformed(const TimedField& u, const ProblemParams& params) {
  const TransformParams tp = transform_params(params);
  TimedField v;
  v.field.grid = map_grid(*u.field.grid, &to_s, tp);
  v.field.values = u.field.values;
  v.field.dimension = tp.N_bar;
  v.time = tp.Lambda * u.time;
  return v;
}

TimedField from_transformed(const TimedField& v, const ProblemParams& params) {
  const TransformParams tp = transform_params(params);
  TimedField u;
  u.field.grid = map_grid(*v.field.grid, &to_r, tp);
  u.field.values = v.field.values;
  u.field.dimension = params.N;
  u.time = v.time / tp.Lambda;
  return u;
}

RadialProfile forcing_W(const RadialProfile& w, const ProblemParams& params) {
  const TransformParams tp = transform_params(params);
  const double pre = std::pow(tp.Lambda, -params.rho - 1.0);
  const double sigma1 = params.sigma1;
  return [=](double s) {
    const double r = to_r(tp, s);
    return pre * std::pow(r, -sigma1) * w(r);
  };
}

namespace {

// Weights of the second-order three-point first and second derivatives at
// x1 from samples at x0 < x1 < x2.
struct Stencil {
  double d1[3];
  double d2[3];
};

Stencil stencil(double x0, double x1, double x2) {
  const double h0 = x1 - x0, h1 = x2 - x1;
  Stencil s;
  s.d1[0] = -h1 / (h0 * (h0 + h1));
  s.d1[1] = (h1 - h0) / (h0 * h1);
  s.d1[2] = h0 / (h1 * (h0 + h1));
  s.d2[0] = 2.0 / (h0 * (h0 + h1));
  s.d2[1] = -2.0 / (h0 * h1);
  s.d2[2] = 2.0 / (h1 * (h0 + h1));
  return s;
}

}  // namespace

std::vector<ResidualRow> residual_check(const Trajectory& u, const RadialProfile& w, const ProblemParams& params,
                                        const std::vector<double>& test_times, double r_lo, double r_hi) {
  const TransformParams tp = transform_params(params);
  const RadialProfile W = forcing_W(w, params);
  const double p = params.p;
  std::vector<ResidualRow> rows;

  for (double t_test : test_times) {
    std::size_t k = u.nearest(t_test);
    if (k == 0) k = 1;
    if (k + 1 >= u.size()) throw Error(ErrorCode::InsufficientResolution, "test time needs neighbouring frames");
    TimedField prev = to_transformed({u.fields[k - 1], u.times[k - 1]}, params);
    TimedField cur = to_transformed({u.fields[k], u.times[k]}, params);
    TimedField next = to_transformed({u.fields[k + 1], u.times[k + 1]}, params);

    const RadialGrid& sg = *cur.field.grid;
    const RadialGrid& rg = *u.fields[k].grid;
    const Stencil ts = stencil(prev.time, cur.time, next.time);
    const double tau = cur.time;
    const auto& v = cur.field.values;

    double res2 = 0.0, scale2 = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 1; i + 1 < sg.size(); ++i) {
      if (rg.r(i) < r_lo || rg.r(i) > r_hi) continue;
      const double s = sg.r(i);
      const Stencil ss = stencil(sg.r(i - 1), s, sg.r(i + 1));
      const double v_tau = ts.d1[0] * prev.field.values[i] + ts.d1[1] * v[i] + ts.d1[2] * next.field.values[i];
      const double v_s = ss.d1[0] * v[i - 1] + ss.d1[1] * v[i] + ss.d1[2] * v[i + 1];
      const double v_ss = ss.d2[0] * v[i - 1] + ss.d2[1] * v[i] + ss.d2[2] * v[i + 1];
      const double diffusion = v_ss + (tp.N_bar - 1.0) / s * v_s;
      const double reaction = std::pow(s, tp.sigma_bar) * std::pow(std::abs(v[i]), p);
      const double forcing = (tau > 0.0 ? std::pow(tau, params.rho) : 0.0) * W(s);
      const double res = v_tau - diffusion - reaction - forcing;
      const double largest = std::max({std::abs(v_tau), std::abs(diffusion), std::abs(reaction), std::abs(forcing)});
      const double ds = 0.5 * (sg.r(i + 1) - sg.r(i - 1));
      const double measure = std::pow(s, tp.N_bar - 1.0) * ds;
      res2 += res * res * measure;
      scale2 += largest * largest * measure;
      ++count;
    }
    if (count < 5) throw Error(ErrorCode::InsufficientResolution, "fewer than 5 interior nodes");
    const double omega = sphere_area(tp.N_bar);
    rows.push_back({tau, std::sqrt(omega * res2), std::sqrt(omega * scale2), count});
  }
  return rows;
}

}  // namespace fujita
