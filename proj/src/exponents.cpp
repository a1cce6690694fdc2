#include "fujita/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fujita/csv.hpp"
#include "fujita/errors.hpp"

namespace fujita {

namespace {

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

ValidationResult validate(const ProblemParams& params) {
  ValidationResult result;
  auto bad = [&](bool violated, const char* what) {
    if (violated) result.violations.emplace_back(what);
  };
  bad(params.N < 2, "N < 2");
  bad(!(params.sigma1 > -2.0), "sigma1 <= -2");
  bad(!(params.sigma2 > -2.0), "sigma2 <= -2");
  bad(!(params.rho > -1.0), "rho <= -1");
  bad(!(params.p > 1.0), "p <= 1");
  bad(!std::isfinite(params.sigma1) || !std::isfinite(params.sigma2) || !std::isfinite(params.rho) ||
          !std::isfinite(params.p),
      "non-finite parameter");
  return result;
}

std::string describe(const ProblemParams& params) {
  return "N=" + std::to_string(params.N) + " sigma1=" + format_number(params.sigma1) +
         " sigma2=" + format_number(params.sigma2) + " rho=" + format_number(params.rho) +
         " p=" + format_number(params.p);
}

double ExtendedReal::value() const {
  if (infinite_) throw std::logic_error("ExtendedReal::value() on +infinity");
  return value_;
}

std::string ExtendedReal::to_string() const { return infinite_ ? "inf" : format_number(value_); }

double fujita_first(const ProblemParams& params) {
  return 1.0 + (2.0 + params.sigma2) / (params.N + params.sigma1);
}

double fujita_second(const ProblemParams& params) {
  return 2.0 * (2.0 + params.sigma2) / (params.A() * (params.p - 1.0));
}

double scaling_index(const ProblemParams& params) {
  return params.N * (params.p - 1.0) / (2.0 + params.sigma2);
}

ExtendedReal critical_forced(const ProblemParams& params) {
  const double rho_a = params.rho * params.A();
  const double denom = params.N - 2.0 - rho_a;
  if (!(denom > 0.0)) return ExtendedReal::infinity();
  return ExtendedReal((params.N + params.sigma2 - rho_a) / denom);
}

double forcing_index(const ProblemParams& params) {
  const double pm1 = params.p - 1.0;
  return params.N * pm1 / (2.0 + params.sigma2 + (1.0 + params.rho) * params.A() * pm1);
}

double forcing_index_gap(const ProblemParams& params) {
  return 1.0 / forcing_index(params) - 1.0 / scaling_index(params);
}

double quadratic_f(const ProblemParams& params, double p) {
  const double rho_a = params.rho * params.A();
  return rho_a * p * p - (params.N - 2.0 + rho_a) * p + (params.N + params.sigma2);
}

double quadratic_f_at_critical(const ProblemParams& params) {
  const double rho_a = params.rho * params.A();
  const double d = params.N - 2.0 - rho_a;
  const double s = params.sigma2 + 2.0;
  return rho_a * s * s / (d * d);
}

double InverseWindow::midpoint() const { return 0.5 * (std::max(lower, 0.0) + upper); }

double InverseWindow::r_high() const {
  return lower > 0.0 ? 1.0 / lower : std::numeric_limits<double>::infinity();
}

InverseWindow window_bounds(const ProblemParams& params) {
  const double inv_pc = 1.0 / scaling_index(params);
  const double n = params.N;
  const double a = params.A();
  const double p = params.p;
  InverseWindow w;
  w.lower = std::max(inv_pc - a / (n * p), inv_pc + params.rho * a / n);
  w.upper = std::min(inv_pc, (n + params.sigma2) / (n * p));
  return w;
}

InverseWindow r_window(const ProblemParams& params) {
  const InverseWindow w = window_bounds(params);
  if (w.empty()) {
    std::ostringstream os;
    os << "1/r window (" << format_number(w.lower) << ", " << format_number(w.upper) << ") is empty";
    throw Error(ErrorCode::EmptyWindow, os.str());
  }
  return w;
}

double window_fujita_bound(const ProblemParams& params) {
  return (params.N + 2.0 + params.sigma1 + params.sigma2) / (params.N + params.sigma1);
}

Weights derived_weights(const ProblemParams& params, double r) {
  const InverseWindow w = window_bounds(params);
  const double inv_r = 1.0 / r;
  if (!(r > 1.0) || !w.contains(inv_r)) {
    std::ostringstream os;
    os << "r = " << format_number(r) << " outside window r in (" << format_number(w.r_low()) << ", "
       << format_number(w.r_high()) << ")";
    throw Error(ErrorCode::WindowViolation, os.str());
  }
  const double n = params.N;
  const double a = params.A();
  const double p = params.p;
  Weights out;
  out.r = r;
  out.mu = (n / a) * (1.0 / scaling_index(params) - inv_r);
  out.beta = (n / a) * (1.0 / forcing_index(params) - inv_r);
  out.delta = n * (p - 1.0) / (a * r) - (params.sigma2 - params.sigma1) / a;

  if (!(out.mu > 0.0 && out.mu < 1.0 / p && out.beta > 0.0 && out.beta < 1.0 && out.delta > 0.0 &&
        out.delta < 1.0)) {
    throw Error(ErrorCode::WindowViolation, "weights (mu, beta, delta) out of range for r = " + format_number(r));
  }
  // 1 - p mu - delta = -mu = rho + 1 - beta
  if (!close_rel(1.0 - p * out.mu - out.delta, -out.mu, 1e-12) ||
      !close_rel(-out.mu, params.rho + 1.0 - out.beta, 1e-12)) {
    throw std::logic_error("weight identities violated beyond rounding");
  }
  return out;
}

double default_r(const ProblemParams& params) { return 1.0 / r_window(params).midpoint(); }

bool local_q_admissible(const ProblemParams& params, double q) {
  const double n = params.N;
  const double p = params.p;
  const double lower = std::max(n * p / (n + params.sigma2), n * (p - 1.0) / (2.0 + params.sigma2));
  return q > lower && q >= p && q >= 1.0;
}

double local_alpha(const ProblemParams& params, double q) {
  if (!local_q_admissible(params, q))
    throw Error(ErrorCode::Inadmissible, "q = " + format_number(q) + " fails the local-existence conditions");
  const double a = params.A();
  const double alpha = params.N * (params.p - 1.0) / (q * a) + (params.sigma1 - params.sigma2) / a;
  if (!(alpha < 1.0)) throw Error(ErrorCode::Inadmissible, "alpha >= 1 for q = " + format_number(q));
  return alpha;
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::NoGlobal_RhoPositive: return "NoGlobal_RhoPositive";
    case Regime::NoGlobal_Subcritical: return "NoGlobal_Subcritical";
    case Regime::NoGlobal_CriticalRhoZero: return "NoGlobal_CriticalRhoZero";
    case Regime::GlobalCandidate_Supercritical: return "GlobalCandidate_Supercritical";
    case Regime::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

ExtendedReal rho_zero_threshold(const ProblemParams& params) {
  if (params.N <= 2) return ExtendedReal::infinity();
  return ExtendedReal((params.N + params.sigma2) / (params.N - 2.0));
}

Regime classify_regime(const ProblemParams& params, MassSign w_mass_sign) {
  if (!validate(params).valid()) return Regime::Unclassified;
  const bool positive = w_mass_sign == MassSign::Positive;
  const double p = params.p;
  if (params.rho > 0.0) return positive ? Regime::NoGlobal_RhoPositive : Regime::Unclassified;
  if (params.rho == 0.0) {
    if (positive && p <= rho_zero_threshold(params)) return Regime::NoGlobal_CriticalRhoZero;
    return Regime::Unclassified;
  }
  const ExtendedReal p_star = critical_forced(params);
  if (p < p_star) return positive ? Regime::NoGlobal_Subcritical : Regime::Unclassified;
  if (p > p_star) return Regime::GlobalCandidate_Supercritical;
  return Regime::Unclassified;
}

bool global_theory_applies(const ProblemParams& params) {
  return validate(params).valid() && params.sigma2 < params.sigma1 && params.sigma1 <= 0.0 &&
         params.rho < 0.0 && params.p > critical_forced(params);
}

ExponentReport make_report(const ProblemParams& params, MassSign w_mass_sign, std::optional<double> r) {
  ExponentReport rep;
  rep.params = params;
  rep.p_fujita = fujita_first(params);
  rep.mu_star = fujita_second(params);
  rep.p_c = scaling_index(params);
  rep.p_star = critical_forced(params);
  rep.r_c = forcing_index(params);
  rep.window = window_bounds(params);
  rep.window_nonempty = !rep.window.empty();
  rep.regime = classify_regime(params, w_mass_sign);
  if (rep.window_nonempty && global_theory_applies(params)) {
    const double chosen = r ? *r : 1.0 / rep.window.midpoint();
    rep.weights = derived_weights(params, chosen);
  }
  return rep;
}

namespace {

struct Field {
  const char* key;
  std::string value;
};

std::vector<Field> report_fields(const ExponentReport& rep) {
  const auto& pr = rep.params;
  const auto nan = std::numeric_limits<double>::quiet_NaN();
  const double r_lo = rep.window_nonempty ? rep.window.r_low() : nan;
  const double r_hi = rep.window_nonempty ? rep.window.r_high() : nan;
  return {
      {"N", std::to_string(pr.N)},
      {"sigma1", format_number(pr.sigma1)},
      {"sigma2", format_number(pr.sigma2)},
      {"rho", format_number(pr.rho)},
      {"p", format_number(pr.p)},
      {"p_fujita", format_number(rep.p_fujita)},
      {"mu_star", format_number(rep.mu_star)},
      {"p_c", format_number(rep.p_c)},
      {"p_star", rep.p_star.to_string()},
      {"r_c", format_number(rep.r_c)},
      {"r_lo", format_number(r_lo)},
      {"r_hi", format_number(r_hi)},
      {"mu", format_number(rep.weights ? rep.weights->mu : nan)},
      {"beta", format_number(rep.weights ? rep.weights->beta : nan)},
      {"delta", format_number(rep.weights ? rep.weights->delta : nan)},
      {"regime", to_string(rep.regime)},
  };
}

}  // namespace

std::string to_key_value(const ExponentReport& report) {
  std::ostringstream os;
  for (const auto& f : report_fields(report)) os << f.key << '=' << f.value << '\n';
  if (report.weights) os << "r=" << format_number(report.weights->r) << '\n';
  return os.str();
}

std::string report_csv_header() {
  std::string out;
  for (const auto& f : report_fields(ExponentReport{})) {
    if (!out.empty()) out += ',';
    out += f.key;
  }
  return out;
}

std::string to_csv_row(const ExponentReport& report) {
  std::string out;
  bool first = true;
  for (const auto& f : report_fields(report)) {
    if (!first) out += ',';
    out += f.value;
    first = false;
  }
  return out;
}

}  // namespace fujita
