#include <doctest.h>

#include <cmath>

#include "fujita/blowup.hpp"
#include "fujita/errors.hpp"
#include "fujita/profiles.hpp"

using namespace fujita;
using doctest::Approx;

namespace {

ScanSetup scan_setup(double T_max) {
  ScanSetup s;
  s.grid = make_grid(RadialGrid::log_uniform(3000.0, 256, 1e-6));
  s.semigroup = {TimeScheme::ImplicitEuler, 1.0, 1};
  s.u0 = zero_profile();
  s.w = bump(1, 1);
  s.cfg.T_max = T_max;
  return s;
}

}  // namespace

TEST_CASE("zero data stays zero") {
  const GridPtr g = make_grid(RadialGrid::log_uniform(10.0, 64));
  const SemigroupOp op(g, {3, 0, 0, -0.5, 2}, {});
  BlowupConfig cfg;
  cfg.T_max = 1.0;
  cfg.sample_times = {0.5, 1.0};
  const SolveOutcome o = integrate_nonlinear(op, RadialField::zeros(g, 3), zero_profile(), cfg);
  CHECK(o.kind == Outcome::Global);
  CHECK(o.t_end == Approx(1.0));
  CHECK(o.max_norm == 0.0);
  REQUIRE(o.samples.size() == 2);
  CHECK(o.samples.times[0] == 0.5);
  CHECK(to_string(Outcome::BlownUp) == "BlownUp");
}

TEST_CASE("subcritical forcing blows up") {
  const GridPtr g = make_grid(RadialGrid::log_uniform(1000.0, 256, 1e-6));
  const SemigroupOp op(g, {3, 0, 0, -0.5, 1.5}, {TimeScheme::ImplicitEuler, 1.0, 1});
  BlowupConfig cfg;
  cfg.T_max = 1000.0;
  const RadialProfile w = bump(1, 1.0 / volume_integral(bump(1, 1), 3, 1.0));
  const SolveOutcome o = integrate_nonlinear(op, RadialField::zeros(g, 3), w, cfg);
  CHECK(o.kind == Outcome::BlownUp);
  CHECK(o.t_end < cfg.T_max);
  CHECK(o.max_norm > cfg.blowup_norm_cap);
}

TEST_CASE("supercritical small data stays global and decays") {
  const GridPtr g = make_grid(RadialGrid::log_uniform(1000.0, 256, 1e-6));
  const SemigroupOp op(g, {3, 0, 0, -0.5, 3}, {TimeScheme::ImplicitEuler, 1.0, 1});
  BlowupConfig cfg;
  cfg.T_max = 100.0;
  cfg.sample_times = {10.0, 100.0};
  const SolveOutcome o =
      integrate_nonlinear(op, RadialField::sample(g, 3, gaussian(0, 1, 1e-3)), bump(1, 1e-3), cfg);
  REQUIRE(o.kind == Outcome::Global);
  CHECK(lq_norm(o.samples.fields[1], INFINITY) < lq_norm(o.samples.fields[0], INFINITY));
}

TEST_CASE("scan without a transition") {
  ScanSetup s = scan_setup(1.0);
  CHECK_THROWS_AS(scan_threshold({3, 0, 0, -0.5, 2}, {2.5, 3.0}, 1e-3, s, 2), Error);
}

TEST_CASE("scan brackets a transition") {
  const ScanSetup s = scan_setup(30.0);
  const ScanResult r = scan_threshold({3, 0, 0, -0.5, 2}, {1.5, 2.0, 2.5}, 5.12, s, 2);
  CHECK(r.p_lo < r.p_hi);
  CHECK(r.p_hi - r.p_lo == Approx(0.125));
  CHECK(r.points.size() == 5);
  CHECK(r.p_star.value() == Approx(2.0));
}

TEST_CASE("calibration returns a doubling of the start amplitude") {
  const ScanSetup s = scan_setup(10.0);
  const double a = calibrate_amplitude({3, 0, 0, -0.5, 2}, 1.5, 10.0, 0.01, s);
  const double k = std::log2(a / 0.01);
  CHECK(k == Approx(std::round(k)));
  CHECK_THROWS_AS(calibrate_amplitude({3, 0, 0, -0.5, 2}, 1.5, 10.0, 1e-12, s, 2), Error);
}
