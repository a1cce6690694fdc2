#include <doctest.h>

#include <cmath>

#include "fujita/errors.hpp"
#include "fujita/exponents.hpp"

using namespace fujita;
using doctest::Approx;

namespace {

ProblemParams make(int n, double s1, double s2, double rho, double p) { return {n, s1, s2, rho, p}; }

}  // namespace

TEST_CASE("validate reports each violated hypothesis") {
  CHECK(validate(make(3, 0, 0, -0.5, 2)).valid());
  const auto v = validate(make(3, -2, 0, -0.5, 2));
  REQUIRE(v.violations.size() == 1);
  CHECK(v.violations[0] == "sigma1 <= -2");
  CHECK(validate(make(1, 0, 0, 0, 2)).violations[0] == "N < 2");
  CHECK(validate(make(3, 0, 0, -1, 1)).violations.size() == 2);
}

TEST_CASE("first and second critical exponents") {
  CHECK(fujita_first(make(3, 0, 0, 0, 2)) == Approx(5.0 / 3.0));
  CHECK(fujita_first(make(3, -1, 1, 0, 2)) == Approx(2.5));
  CHECK(fujita_first(make(2, 0, 2, 0, 2)) == Approx(3.0));
  CHECK(fujita_second(make(3, 0, 0, 0, 2)) == Approx(2.0));
  CHECK(fujita_second(make(3, -1, 0, 0, 2)) == Approx(4.0));
  CHECK(fujita_second(make(3, 0, 2, 0, 3)) == Approx(2.0));
}

TEST_CASE("scaling index") {
  CHECK(scaling_index(make(3, 0, 0, 0, 2)) == Approx(1.5));
  CHECK(scaling_index(make(4, 0, -1, 0, 2)) == Approx(4.0));
  const ProblemParams pr = make(5, -0.3, 0.7, 0, 1.0 + 2.7 / 5.0);
  CHECK(scaling_index(pr) == Approx(1.0));
}

TEST_CASE("critical forced exponent") {
  for (double s1 : {0.0, -0.5, -1.0, -1.7}) CHECK(critical_forced(make(4, s1, 0, 0, 2)).value() == Approx(2.0));
  CHECK(critical_forced(make(2, 0, 0, 0, 2)).is_infinite());
  CHECK(critical_forced(make(3, 0, 0, -0.5, 2)).value() == Approx(2.0));
  CHECK(critical_forced(make(3, -1, -0.5, -0.5, 2)).value() == Approx(2.0));
  CHECK(critical_forced(make(3, 0, 0, -0.5, 2)).to_string() == "2");
  CHECK(ExtendedReal::infinity().to_string() == "inf");
  CHECK_THROWS_AS(ExtendedReal::infinity().value(), std::logic_error);
}

TEST_CASE("forcing index") {
  CHECK(forcing_index(make(3, 0, 0, -0.5, 3)) == Approx(1.5));
  CHECK(forcing_index(make(4, -1, -1, -0.5, 2)) == Approx(8.0 / 3.0));
  const ProblemParams limit = make(3, -0.4, -0.9, -1.0 + 1e-12, 2.5);
  CHECK(forcing_index(limit) == Approx(scaling_index(limit)).epsilon(1e-9));
  CHECK(forcing_index_gap(make(3, -0.5, -1, -0.25, 3)) == Approx(0.75 * 1.5 / 3.0));
}

TEST_CASE("quadratic f") {
  const ProblemParams pr = make(3, 0, 0, -0.5, 2);
  CHECK(quadratic_f(pr, 2.0) == Approx(-1.0));
  CHECK(quadratic_f_at_critical(pr) == Approx(-1.0));
  const ProblemParams flat = make(4, -0.5, 0.3, 0.0, 2);
  CHECK(quadratic_f(flat, 1.7) == Approx(-(2.0) * 1.7 + 4.3));
}

TEST_CASE("r window and weights") {
  const ProblemParams pr = make(3, 0, 0, -0.5, 3);
  const InverseWindow w = r_window(pr);
  CHECK(w.lower == Approx(1.0 / 9.0));
  CHECK(w.upper == Approx(1.0 / 3.0));
  CHECK(w.r_low() == Approx(3.0));
  CHECK(w.r_high() == Approx(9.0));

  const ProblemParams gp = make(3, 0, -0.1, -0.5, 3);
  const Weights k = derived_weights(make(3, 0, 0, -0.5, 3), 6.0);
  CHECK(k.mu == Approx(0.25));
  CHECK(k.beta == Approx(0.75));
  CHECK(k.delta == Approx(0.5));
  CHECK(1.0 - 3.0 * k.mu - k.delta == Approx(-0.25));
  CHECK(default_r(gp) > 1.0);
  CHECK_THROWS_AS(derived_weights(pr, 20.0), Error);
  try {
    derived_weights(pr, 2.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WindowViolation);
  }
}

TEST_CASE("window closes near the fujita-type bound") {
  const ProblemParams pr = make(3, 0, 0, -1e-3, 1.4);
  CHECK(pr.p < window_fujita_bound(pr));
  CHECK_THROWS_AS(r_window(pr), Error);
  CHECK(window_bounds(pr).empty());
  const ProblemParams at = make(3, 0, 0, -0.5, 2);
  const InverseWindow w = window_bounds(at);
  CHECK(std::isfinite(w.lower));
}

TEST_CASE("local exponent and admissibility") {
  const ProblemParams pr = make(3, 0, 0, 0, 2);
  CHECK(local_alpha(pr, 4.0) == Approx(0.375));
  CHECK(local_alpha(make(3, -0.5, -0.5, 0, 2), 1e12) == Approx(0.0).epsilon(1e-9));
  CHECK(local_q_admissible(pr, 4.0));
  CHECK(local_q_admissible(make(2, 0, 1, 0, 2), 2.0));
  CHECK_FALSE(local_q_admissible(make(2, 0, 0, 0, 2.5), 2.5));
  CHECK_FALSE(local_q_admissible(pr, 1.4));
  CHECK_THROWS_AS(local_alpha(pr, 1.4), Error);
}

TEST_CASE("regime classification") {
  CHECK(classify_regime(make(3, 0, 0, -0.5, 1.5), MassSign::Positive) == Regime::NoGlobal_Subcritical);
  CHECK(classify_regime(make(2, 0, 0, 0, 7), MassSign::Positive) == Regime::NoGlobal_CriticalRhoZero);
  CHECK(classify_regime(make(3, 0, 0, -0.5, 2), MassSign::Positive) == Regime::Unclassified);
  CHECK(classify_regime(make(3, 0, 0, 0.5, 9), MassSign::Positive) == Regime::NoGlobal_RhoPositive);
  CHECK(classify_regime(make(3, 0, 0, 0.5, 9), MassSign::Zero) == Regime::Unclassified);
  CHECK(classify_regime(make(3, 0, 0, -0.5, 3), MassSign::Negative) == Regime::GlobalCandidate_Supercritical);
  CHECK(classify_regime(make(3, 0, 0, -0.5, 1.5), MassSign::Negative) == Regime::Unclassified);
  CHECK(classify_regime(make(3, 0, 0, 0, 3), MassSign::Positive) == Regime::NoGlobal_CriticalRhoZero);
  CHECK(classify_regime(make(3, 0, 0, 0, 3.5), MassSign::Positive) == Regime::Unclassified);
  CHECK(to_string(Regime::NoGlobal_Subcritical) == "NoGlobal_Subcritical");
}

TEST_CASE("report serialization") {
  const ExponentReport rep = make_report(make(3, 0, 0, -0.5, 3));
  CHECK(rep.p_star.value() == Approx(2.0));
  CHECK(rep.window_nonempty);
  CHECK_FALSE(rep.weights.has_value());
  const std::string row = to_csv_row(rep);
  CHECK(row.find(",2,1.5,3,9,") != std::string::npos);
  CHECK(report_csv_header().rfind("N,sigma1", 0) == 0);

  const ExponentReport g = make_report(make(3, 0, -0.1, -0.5, 3), MassSign::Positive, 5.0);
  REQUIRE(g.weights.has_value());
  CHECK(g.weights->r == 5.0);
  CHECK(to_key_value(g).find("r=5\n") != std::string::npos);
  CHECK(describe(make(3, 0, 0, -0.5, 3)) == "N=3 sigma1=0 sigma2=0 rho=-0.5 p=3");
}
