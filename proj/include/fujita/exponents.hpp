#pragma once

// Closed-form critical exponents for
//
//     |x|^sigma1 u_t = Delta u + |x|^sigma2 |u|^p + t^rho w(x),   x in R^N,
//
// together with the admissible Lebesgue-index window used by the global
// fixed-point construction and the exponents of the local theory.

#include <optional>
#include <string>
#include <vector>

namespace fujita {

struct ProblemParams {
  int N = 3;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double rho = 0.0;
  double p = 2.0;

  /// A = 2 + sigma1, the homogeneity degree of |x|^{-sigma1} Delta.
  double A() const { return 2.0 + sigma1; }
};

/// "N=3 sigma1=0 sigma2=0 rho=-0.5 p=3", used as the comment line of every CSV.
std::string describe(const ProblemParams& params);

struct ValidationResult {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

/// Lists every violated standing hypothesis (N >= 2, sigma_i > -2, rho > -1, p > 1).
ValidationResult validate(const ProblemParams& params);

/// A real number or +infinity. Used for exponents whose defining denominator
/// can vanish or change sign.
class ExtendedReal {
public:
  explicit ExtendedReal(double v) : value_(v) {}
  static ExtendedReal infinity() { return ExtendedReal(); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// Throws std::logic_error when infinite.
  double value() const;
  std::string to_string() const;

  friend bool operator<(double x, const ExtendedReal& e) { return e.infinite_ || x < e.value_; }
  friend bool operator>(double x, const ExtendedReal& e) { return !e.infinite_ && x > e.value_; }
  friend bool operator<=(double x, const ExtendedReal& e) { return e.infinite_ || x <= e.value_; }
  friend bool operator>=(double x, const ExtendedReal& e) { return !e.infinite_ && x >= e.value_; }
  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

private:
  ExtendedReal() : value_(0.0), infinite_(true) {}
  double value_;
  bool infinite_ = false;
};

/// p_F = 1 + (2 + sigma2) / (N + sigma1). The p field is ignored.
double fujita_first(const ProblemParams& params);

/// mu* = 2 (2 + sigma2) / ((2 + sigma1)(p - 1)), the critical decay rate of data.
double fujita_second(const ProblemParams& params);

/// p_c = N (p - 1) / (2 + sigma2): the Lebesgue index invariant under the
/// equation's scaling.
double scaling_index(const ProblemParams& params);

/// p* = (N + sigma2 - rho A) / (N - 2 - rho A), or +infinity when the
/// denominator is not positive.
ExtendedReal critical_forced(const ProblemParams& params);

/// r_c = N (p - 1) / (2 + sigma2 + (1 + rho) A (p - 1)).
double forcing_index(const ProblemParams& params);

/// 1/r_c - 1/p_c, which equals (1 + rho) A / N.
double forcing_index_gap(const ProblemParams& params);

/// f(p) = rho A p^2 - (N - 2 + rho A) p + (N + sigma2). params.p is ignored;
/// the polynomial is evaluated at the free argument `p`.
double quadratic_f(const ProblemParams& params, double p);

/// Closed form of f(p*): rho A (sigma2 + 2)^2 / (N - 2 - rho A)^2.
double quadratic_f_at_critical(const ProblemParams& params);

/// Open interval (lower, upper) of admissible values of 1/r.
struct InverseWindow {
  double lower = 0.0;
  double upper = 0.0;

  bool empty() const { return !(lower < upper); }
  bool contains(double inv_r) const { return lower < inv_r && inv_r < upper; }
  /// Midpoint in 1/r coordinates, with the lower end clipped at 0 so that r > 1 stays finite.
  double midpoint() const;
  /// The corresponding range of r: (1/upper, 1/max(lower,0)); the upper end is +inf when lower <= 0.
  double r_low() const { return 1.0 / upper; }
  double r_high() const;
};

/// Window bounds evaluated straight from the formulas, without judging emptiness.
InverseWindow window_bounds(const ProblemParams& params);

/// Same bounds; throws Error(EmptyWindow) when lower >= upper.
InverseWindow r_window(const ProblemParams& params);

/// Threshold (N + 2 + sigma1 + sigma2)/(N + sigma1) below which the window
/// necessarily closes.
double window_fujita_bound(const ProblemParams& params);

struct Weights {
  double r = 0.0;
  double mu = 0.0;
  double beta = 0.0;
  double delta = 0.0;
};

/// mu, beta, delta for a chosen r inside the window. Throws
/// Error(WindowViolation) if 1/r is outside the window or r <= 1, and
/// verifies 0 < mu < 1/p, 0 < beta < 1, 0 < delta < 1.
Weights derived_weights(const ProblemParams& params, double r);

/// r at the midpoint of the window in 1/r coordinates.
double default_r(const ProblemParams& params);

/// Checks q > max{Np/(N + sigma2), N(p - 1)/(2 + sigma2)} and q >= p.
bool local_q_admissible(const ProblemParams& params, double q);

/// alpha = N(p - 1)/(q A) + (sigma1 - sigma2)/A, the time singularity of the
/// local Duhamel kernel. Throws Error(Inadmissible) for inadmissible q.
double local_alpha(const ProblemParams& params, double q);

enum class MassSign { Negative, Zero, Positive };

enum class Regime {
  NoGlobal_RhoPositive,
  NoGlobal_Subcritical,
  NoGlobal_CriticalRhoZero,
  GlobalCandidate_Supercritical,
  Unclassified,
};

std::string to_string(Regime regime);

/// (N + sigma2)/(N - 2)_+ ; +infinity at N = 2.
ExtendedReal rho_zero_threshold(const ProblemParams& params);

Regime classify_regime(const ProblemParams& params, MassSign w_mass_sign);

struct ExponentReport {
  ProblemParams params;
  double p_fujita = 0.0;
  double mu_star = 0.0;
  double p_c = 0.0;
  ExtendedReal p_star{0.0};
  double r_c = 0.0;
  InverseWindow window;
  bool window_nonempty = false;
  std::optional<Weights> weights;
  Regime regime = Regime::Unclassified;
};

/// Evaluates every exponent. Weights are filled only when the global-theory
/// hypotheses hold and the window is nonempty; `r` defaults to the midpoint.
ExponentReport make_report(const ProblemParams& params, MassSign w_mass_sign = MassSign::Positive,
                           std::optional<double> r = std::nullopt);

std::string to_key_value(const ExponentReport& report);
std::string report_csv_header();
std::string to_csv_row(const ExponentReport& report);

/// Hypotheses of the global small-data theory: -2 < sigma2 < sigma1 <= 0, -1 < rho < 0, p > p*.
bool global_theory_applies(const ProblemParams& params);

}  // namespace fujita
