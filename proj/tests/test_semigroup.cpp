#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fujita/errors.hpp"
#include "fujita/fit.hpp"
#include "fujita/profiles.hpp"
#include "fujita/semigroup.hpp"

using namespace fujita;
using doctest::Approx;

namespace {

const double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("grid construction") {
  const RadialGrid g = RadialGrid::log_uniform(10.0, 32, 1e-3);
  CHECK(g.r_min() == Approx(1e-2));
  CHECK(g.r_max() == 10.0);
  CHECK(g.faces().front() == 0.0);
  CHECK(g.faces()[1] == Approx(std::sqrt(g.r(0) * g.r(1))));
  CHECK_THROWS(RadialGrid::log_uniform(10.0, 8));
  CHECK_THROWS(RadialGrid::from_nodes({1, 2, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}));
  CHECK(sphere_area(3) == Approx(4 * kPi));
  CHECK(sphere_area(2) == Approx(2 * kPi));
}

TEST_CASE("weighted Lebesgue norms") {
  const GridPtr g = make_grid(RadialGrid::uniform(1e-3, 4.0, 8001));
  const RadialField ind = RadialField::sample(g, 3, [](double r) { return r >= 1.0 && r <= 2.0 ? 1.0 : 0.0; });
  CHECK(lq_norm(ind, 1.0) == Approx(4.0 * kPi / 3.0 * 7.0).epsilon(2e-3));
  CHECK(lq_norm(RadialField::zeros(g, 3), 2.0) == 0.0);
  CHECK(lq_norm(ind, INFINITY) == 1.0);

  const GridPtr lg = make_grid(RadialGrid::log_uniform(30.0, 2048, 1e-6));
  const RadialField gauss = RadialField::sample(lg, 3, gaussian(0, 1, 1));
  // int exp(-r^2) dx over R^3 = pi^{3/2}
  CHECK(lq_norm(gauss, 1.0) == Approx(std::pow(kPi, 1.5)).epsilon(1e-4));
  // int r^2 exp(-r^2) dx = (3/2) pi^{3/2}
  CHECK(std::pow(lq_norm(gauss, 1.0, 2.0), 1.0) == Approx(1.5 * std::pow(kPi, 1.5)).epsilon(1e-4));
}

TEST_CASE("interpolation reproduces cubic polynomials in log r") {
  const GridPtr g = make_grid(RadialGrid::log_uniform(10.0, 40));
  auto f = [](double r) { const double x = std::log(r); return 1 + x - 0.3 * x * x + 0.05 * x * x * x; };
  const RadialField u = RadialField::sample(g, 3, f);
  for (double r : {0.0123, 0.5, 3.3, 9.9}) CHECK(interpolate(u, r) == Approx(f(r)).epsilon(1e-10));
  CHECK(interpolate(u, 11.0) == 0.0);
}

TEST_CASE("semigroup basics") {
  const GridPtr g = make_grid(RadialGrid::log_uniform(20.0, 256));
  const SemigroupOp op(g, {3, -0.5, 0, 0, 2}, {});
  const RadialField u = RadialField::sample(g, 3, gaussian(0, 1, 1));
  CHECK(op.apply(u, 0.0).values == u.values);
  for (double x : op.apply(RadialField::zeros(g, 3), 1.0).values) CHECK(x == 0.0);
  CHECK_THROWS(op.apply(u, -1.0));
  const RadialField v = op.apply(u, 0.5);
  CHECK(v.values.back() == 0.0);
  for (double x : v.values) CHECK(x >= 0.0);
  CHECK(v.max_abs() < u.max_abs());
  CHECK_THROWS_AS(SemigroupOp(g, {3, -3.5, 0, 0, 2}), Error);
}

TEST_CASE("heat evolution of a Gaussian") {
  const GridPtr g = make_grid(RadialGrid::log_uniform(20.0, 1024));
  const SemigroupOp op(g, {3, 0, 0, 0, 2}, {TimeScheme::CrankNicolson, 1e-3, 1});
  const double t = 0.25;
  const RadialField u = op.apply(RadialField::sample(g, 3, gaussian(0, 1, 1)), t);
  const RadialField exact = RadialField::sample(
      g, 3, [&](double r) { return std::pow(1 + 4 * t, -1.5) * std::exp(-r * r / (1 + 4 * t)); });
  CHECK(lq_norm(u - exact, 2.0) / lq_norm(exact, 2.0) < 1e-2);
}

TEST_CASE("weighted mass is conserved away from the boundary") {
  const GridPtr g = make_grid(RadialGrid::log_uniform(50.0, 1024));
  for (double s1 : {0.0, -0.5, -1.0}) {
    const SemigroupOp op(g, {3, s1, 0, 0, 2}, {TimeScheme::ImplicitEuler, 1e-3, 1});
    const RadialField u = RadialField::sample(g, 3, bump(1.0, 1.0));
    const double m0 = op.weighted_mass(u);
    CHECK(std::abs(op.weighted_mass(op.apply(u, 1.0)) - m0) / m0 < 1e-6);
  }
}

TEST_CASE("smoothing exponents") {
  CHECK(smoothing_exponent({3, -0.5, 0, 0, 2}, 2, 4) == Approx(-0.5));
  CHECK(smoothing_exponent({3, 0, 0, 0, 2}, 1.5, 3) == Approx(-0.5));
  CHECK(smoothing_exponent({3, 0, 0, 0, 2}, 2, 2) == 0.0);
  CHECK(weighted_smoothing_exponent({3, 0, 0, 0, 2}, 3, 3, 1) == Approx(-0.5));
  CHECK(weighted_smoothing_exponent({3, -0.5, 0, 0, 2}, 2, 4, 0.5) == Approx(-0.5 - 1.0 / 3.0));
}

TEST_CASE("smoothing slope fit") {
  const GridPtr g = make_grid(RadialGrid::log_uniform(100.0, 1024));
  const ProblemParams pr{3, -0.5, 0, 0, 2};
  const double t1 = std::pow(10.0, pr.A());
  const SemigroupOp op(g, pr, {TimeScheme::ImplicitEuler, t1 / 2000, 1});
  const auto times = log_spaced(0.1 * t1, t1, 8);
  const SlopeStudy s = smoothing_slope(op, 2, 4, power_law(1.5, 0.01), times);
  CHECK(s.theory_exponent == Approx(-0.5));
  CHECK(s.relative_error() < 0.1);

  const SlopeStudy flat = smoothing_slope(op, 2, 2, power_law(1.5, 0.01), times);
  CHECK(flat.theory_exponent == 0.0);
  for (std::size_t k = 1; k < flat.norms.size(); ++k) CHECK(flat.norms[k] <= flat.norms[k - 1] * (1 + 1e-9));

  CHECK_THROWS_AS(smoothing_slope(op, 1.2, 4, power_law(1.5, 0.01), times), Error);
  CHECK_THROWS_AS(smoothing_slope(op, 4, 2, power_law(1.5, 0.01), times), Error);
  CHECK_THROWS_AS(weighted_smoothing_check(op, 2, 4, 3.5, power_law(1.5, 0.01), times), Error);
}

TEST_CASE("scaling identity") {
  const GridPtr g = make_grid(RadialGrid::log_uniform(20.0, 1024));
  const SemigroupOp op(g, {3, 0, 0, 0, 2}, {TimeScheme::CrankNicolson, 2.0 / 1024, 1});
  CHECK(scaling_identity_check(op, 1.0, 0.1, gaussian(0, 1, 1)) == 0.0);
  CHECK(scaling_identity_check(op, 2.0, 0.1, gaussian(0, 1, 1)) < 1e-3);
}

TEST_CASE("source weights") {
  const GridPtr g = make_grid(RadialGrid::log_uniform(10.0, 64));
  const SemigroupOp op(g, {3, -0.5, 0, 0, 2}, {});
  const auto w = op.source_weights(-0.5);
  for (double x : w) CHECK(x == Approx(1.0));
  const auto v = op.source_weights(1.0);
  CHECK(v[40] == Approx(std::pow(g->r(40), 1.5)).epsilon(0.05));
  CHECK_THROWS_AS(op.source_weights(-3.5), Error);
}
