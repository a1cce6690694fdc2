#include "fujita/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "fujita/blowup.hpp"
#include "fujita/capacity.hpp"
#include "fujita/csv.hpp"
#include "fujita/exponents.hpp"
#include "fujita/mild_solver.hpp"
#include "fujita/profiles.hpp"
#include "fujita/semigroup.hpp"
#include "fujita/transform.hpp"

namespace fujita {

namespace {

const std::vector<std::pair<Command, std::string>>& command_names() {
  static const std::vector<std::pair<Command, std::string>> names = {
      {Command::Exponents, "exponents"},       {Command::TransformCheck, "transform-check"},
      {Command::SemigroupCheck, "semigroup-check"}, {Command::MildSolve, "mild-solve"},
      {Command::BlowupScan, "blowup-scan"},    {Command::CapacityFit, "capacity-fit"},
      {Command::LocalSolve, "local-solve"},
  };
  return names;
}

const std::set<std::string> kCommon = {"command", "N", "sigma1", "sigma2", "rho", "p"};
const std::set<std::string> kGrid = {"grid.M", "grid.r_max", "grid.inner_ratio", "semigroup.scheme", "semigroup.dt_max"};
const std::set<std::string> kBlowup = {"blowup.T_max",  "blowup.dt_init", "blowup.dt_min", "blowup.dt_max",
                                       "blowup.dt_rel", "blowup.cfl",     "blowup.cap"};

std::set<std::string> allowed_keys(Command c) {
  std::set<std::string> keys = kCommon;
  auto add = [&](const std::set<std::string>& more) { keys.insert(more.begin(), more.end()); };
  switch (c) {
    case Command::Exponents: add({"w_mass_sign", "r", "p_list"}); break;
    case Command::TransformCheck:
      add(kGrid);
      add(kBlowup);
      add({"u0", "w", "transform.frames", "transform.test_times", "transform.r_lo", "transform.r_hi"});
      break;
    case Command::SemigroupCheck:
      add(kGrid);
      add({"smoothing.a", "smoothing.b", "smoothing.t1", "smoothing.n_t", "smoothing.core", "weighted.q1", "weighted.q2",
           "weighted.gamma", "scaling.lambda", "scaling.t", "scaling.width"});
      break;
    case Command::MildSolve:
      add(kGrid);
      add({"u0", "w", "mild.r", "mild.max_picard", "mild.picard_tol", "mild.substeps", "mild.T_max", "mild.n_times",
           "mild.t_min_ratio"});
      break;
    case Command::LocalSolve:
      add(kGrid);
      add({"u0", "w", "local.q", "local.horizon", "local.n_report", "local.substeps", "local.picard_tol"});
      break;
    case Command::BlowupScan:
      add(kGrid);
      add(kBlowup);
      add({"u0", "w", "scan.p_list", "scan.amplitude", "scan.amplitude_start", "scan.calibrate_p", "scan.calibrate_t",
           "scan.bisections"});
      break;
    case Command::CapacityFit: add({"capacity.R_list", "capacity.rule", "capacity.m"}); break;
  }
  return keys;
}

GridPtr read_grid(const Config& cfg) {
  const long m = cfg.integer("grid.M", 1024);
  if (m < static_cast<long>(RadialGrid::kMinNodes)) throw Error(ErrorCode::ConfigError, "grid.M must be at least 16");
  const double r_max = cfg.number("grid.r_max", 100.0);
  const double inner = cfg.number("grid.inner_ratio", 1e-4);
  if (!(r_max > 0.0) || !(inner > 0.0 && inner < 1.0))
    throw Error(ErrorCode::ConfigError, "grid.r_max must be positive and 0 < grid.inner_ratio < 1");
  return make_grid(RadialGrid::log_uniform(r_max, static_cast<std::size_t>(m), inner));
}

SemigroupOptions read_semigroup(const Config& cfg, double dt_default) {
  SemigroupOptions o;
  const std::string scheme = cfg.text("semigroup.scheme", "implicit-euler");
  if (scheme == "implicit-euler") o.scheme = TimeScheme::ImplicitEuler;
  else if (scheme == "crank-nicolson") o.scheme = TimeScheme::CrankNicolson;
  else throw Error(ErrorCode::ConfigError, "semigroup.scheme must be implicit-euler or crank-nicolson");
  o.dt_max = cfg.number("semigroup.dt_max", dt_default);
  if (!(o.dt_max > 0.0)) throw Error(ErrorCode::ConfigError, "semigroup.dt_max must be positive");
  return o;
}

BlowupConfig read_blowup(const Config& cfg) {
  BlowupConfig b;
  b.T_max = cfg.number("blowup.T_max", b.T_max);
  b.dt_init = cfg.number("blowup.dt_init", b.dt_init);
  b.dt_min = cfg.number("blowup.dt_min", b.dt_min);
  b.dt_max = cfg.number("blowup.dt_max", b.dt_max);
  b.dt_rel = cfg.number("blowup.dt_rel", b.dt_rel);
  b.cfl = cfg.number("blowup.cfl", b.cfl);
  b.blowup_norm_cap = cfg.number("blowup.cap", b.blowup_norm_cap);
  if (!(b.T_max > 0.0 && b.dt_init > 0.0 && b.dt_min > 0.0 && b.dt_max > 0.0 && b.dt_rel > 0.0 && b.cfl > 0.0 &&
        b.blowup_norm_cap > 0.0))
    throw Error(ErrorCode::ConfigError, "blowup.* values must be positive");
  return b;
}

std::string join(const std::string& dir, const std::string& name) { return (std::filesystem::path(dir) / name).string(); }

struct Context {
  const Config& cfg;
  ProblemParams params;
  std::string out_dir;
  RunResult& result;

  void write(const std::string& name, const std::string& contents) {
    const std::string path = join(out_dir, name);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ConfigError, "cannot write '" + path + "'");
    out << contents;
    result.files.push_back(path);
  }
  void write(const std::string& name, const CsvWriter& csv) { write(name, csv.str()); }
  void say(const std::string& line) { result.summary += line + "\n"; }
};

MassSign read_mass_sign(const Config& cfg) {
  const std::string s = cfg.text("w_mass_sign", "positive");
  if (s == "positive") return MassSign::Positive;
  if (s == "negative") return MassSign::Negative;
  if (s == "zero") return MassSign::Zero;
  throw Error(ErrorCode::ConfigError, "w_mass_sign must be positive, negative or zero");
}

void run_exponents(Context& ctx) {
  const MassSign sign = read_mass_sign(ctx.cfg);
  const std::vector<double> ps = ctx.cfg.numbers("p_list", {ctx.params.p});
  std::optional<double> r;
  if (ctx.cfg.has("r")) r = ctx.cfg.number("r");
  std::string header = report_csv_header();
  std::string body = "# " + describe(ctx.params) + "\n" + header + "\n";
  std::string text;
  for (double p : ps) {
    ProblemParams pr = ctx.params;
    pr.p = p;
    if (!validate(pr).valid()) throw Error(ErrorCode::HypothesisViolation, "invalid parameters: " + describe(pr));
    const ExponentReport rep = make_report(pr, sign, r);
    body += to_csv_row(rep) + "\n";
    text += to_key_value(rep) + "\n";
    ctx.say("p=" + format_number(p) + " p_star=" + rep.p_star.to_string() + " regime=" + to_string(rep.regime));
  }
  ctx.write("exponents.csv", body);
  ctx.write("exponents.txt", text);
}

void run_transform_check(Context& ctx) {
  const GridPtr grid = read_grid(ctx.cfg);
  const SemigroupOp op(grid, ctx.params, read_semigroup(ctx.cfg, 1e-2));
  const RadialField u0 = RadialField::sample(grid, ctx.params.N, parse_profile(ctx.cfg.text("u0")));
  const RadialProfile w = parse_profile(ctx.cfg.text("w", "zero"));
  BlowupConfig b = read_blowup(ctx.cfg);
  const long frames = ctx.cfg.integer("transform.frames", 200);
  if (frames < 3) throw Error(ErrorCode::ConfigError, "transform.frames must be at least 3");
  for (long k = 1; k <= frames; ++k) b.sample_times.push_back(b.T_max * static_cast<double>(k) / static_cast<double>(frames));
  const SolveOutcome o = integrate_nonlinear(op, u0, w, b);
  if (o.kind != Outcome::Global)
    throw Error(ErrorCode::StepFailure, "direct solve ended " + to_string(o.kind) + " at t = " + format_number(o.t_end));
  const std::vector<double> tests = ctx.cfg.numbers("transform.test_times", {0.25 * b.T_max, 0.5 * b.T_max, 0.75 * b.T_max});
  const auto rows = residual_check(o.samples, w, ctx.params, tests, ctx.cfg.number("transform.r_lo", 0.0),
                                   ctx.cfg.number("transform.r_hi", 1e300));
  CsvWriter csv(describe(ctx.params), {"time", "residual_L2", "scale_L2", "n_interior"});
  for (const auto& row : rows) {
    csv.add_row(std::vector<double>{row.time, row.residual_L2, row.scale_L2, static_cast<double>(row.n_interior)});
    ctx.say("tau=" + format_number(row.time) + " residual=" + format_number(row.residual_L2) +
            " relative=" + format_number(row.residual_L2 / row.scale_L2));
  }
  ctx.write("transform_residual.csv", csv);
}

void run_semigroup_check(Context& ctx) {
  const ProblemParams& pr = ctx.params;
  const GridPtr grid = read_grid(ctx.cfg);
  const double t1 = ctx.cfg.number("smoothing.t1", std::pow(10.0, pr.A()));
  const long n_t = ctx.cfg.integer("smoothing.n_t", 8);
  if (!(t1 > 0.0) || n_t < 2) throw Error(ErrorCode::ConfigError, "smoothing.t1 > 0 and smoothing.n_t >= 2 required");
  const SemigroupOp op(grid, pr, read_semigroup(ctx.cfg, t1 / 2000.0));
  const std::vector<double> times = log_spaced(0.1 * t1, t1, static_cast<std::size_t>(n_t));
  const double core = ctx.cfg.number("smoothing.core", 0.01);

  CsvWriter csv(describe(pr), {"t", "norm", "q", "gamma", "theory_exponent", "fitted_exponent"});
  auto emit = [&](const SlopeStudy& s, const std::string& label) {
    for (std::size_t k = 0; k < s.times.size(); ++k)
      csv.add_row(std::vector<double>{s.times[k], s.norms[k], s.q, s.gamma, s.theory_exponent, s.fitted_exponent});
    ctx.say(label + " theory=" + format_number(s.theory_exponent) + " fitted=" + format_number(s.fitted_exponent) +
            " rel_error=" + format_number(s.relative_error()));
  };

  const std::vector<double> a = ctx.cfg.numbers("smoothing.a", {});
  const std::vector<double> b = ctx.cfg.numbers("smoothing.b", {});
  if (a.size() != b.size()) throw Error(ErrorCode::ConfigError, "smoothing.a and smoothing.b must have equal length");
  for (std::size_t i = 0; i < a.size(); ++i)
    emit(smoothing_slope(op, a[i], b[i], power_law(pr.N / a[i], core), times),
         "smoothing a=" + format_number(a[i]) + " b=" + format_number(b[i]));

  const std::vector<double> q1 = ctx.cfg.numbers("weighted.q1", {});
  const std::vector<double> q2 = ctx.cfg.numbers("weighted.q2", {});
  const std::vector<double> g = ctx.cfg.numbers("weighted.gamma", {});
  if (q1.size() != q2.size() || q1.size() != g.size())
    throw Error(ErrorCode::ConfigError, "weighted.q1, weighted.q2, weighted.gamma must have equal length");
  for (std::size_t i = 0; i < q1.size(); ++i)
    emit(weighted_smoothing_check(op, q1[i], q2[i], g[i], power_law(pr.N / q1[i], core), times),
         "weighted q1=" + format_number(q1[i]) + " q2=" + format_number(q2[i]) + " gamma=" + format_number(g[i]));
  ctx.write("semigroup_slopes.csv", csv);

  if (ctx.cfg.has("scaling.lambda")) {
    const double lambda = ctx.cfg.number("scaling.lambda");
    const double t = ctx.cfg.number("scaling.t", 0.1);
    const double width = ctx.cfg.number("scaling.width", 1.0);
    const SemigroupOp cn(grid, pr, {TimeScheme::CrankNicolson, 2.0 / static_cast<double>(grid->size()), 1});
    const double d = scaling_identity_check(cn, lambda, t, gaussian(0.0, width, 1.0));
    CsvWriter sc(describe(pr), {"lambda", "t", "M", "discrepancy"});
    sc.add_row(std::vector<double>{lambda, t, static_cast<double>(grid->size()), d});
    ctx.write("semigroup_scaling.csv", sc);
    ctx.say("scaling lambda=" + format_number(lambda) + " discrepancy=" + format_number(d));
  }
}

void run_mild_solve(Context& ctx) {
  const GridPtr grid = read_grid(ctx.cfg);
  const SemigroupOp op(grid, ctx.params, read_semigroup(ctx.cfg, 1e300));
  const RadialField u0 = RadialField::sample(grid, ctx.params.N, parse_profile(ctx.cfg.text("u0")));
  const RadialProfile w = parse_profile(ctx.cfg.text("w"));
  MildConfig m;
  m.r = ctx.cfg.number("mild.r", 0.0);
  m.max_picard = static_cast<int>(ctx.cfg.integer("mild.max_picard", m.max_picard));
  m.picard_tol = ctx.cfg.number("mild.picard_tol", m.picard_tol);
  m.substeps = static_cast<std::size_t>(ctx.cfg.integer("mild.substeps", static_cast<long>(m.substeps)));
  m.T_max = ctx.cfg.number("mild.T_max", m.T_max);
  m.n_times = static_cast<std::size_t>(ctx.cfg.integer("mild.n_times", static_cast<long>(m.n_times)));
  m.t_min_ratio = ctx.cfg.number("mild.t_min_ratio", m.t_min_ratio);
  const GlobalSolve s = solve_global_small(op, u0, w, m);
  ctx.write("mild_trajectory.csv", trajectory_csv(s.trajectory, ctx.params, s.r, s.mu));
  ctx.write("mild_convergence.csv", convergence_csv(s, ctx.params));
  ctx.say("r=" + format_number(s.r) + " mu=" + format_number(s.mu) + " converged=" + (s.converged ? "yes" : "no") +
          " iterations=" + std::to_string(s.history.size()) + " residual=" + format_number(s.residual));
  if (!s.converged) throw Error(ErrorCode::NotContracting, "Picard iteration stopped at max_picard without converging");
}

void run_local_solve(Context& ctx) {
  const GridPtr grid = read_grid(ctx.cfg);
  const SemigroupOp op(grid, ctx.params, read_semigroup(ctx.cfg, 1e300));
  const RadialField u0 = RadialField::sample(grid, ctx.params.N, parse_profile(ctx.cfg.text("u0")));
  const RadialProfile w = parse_profile(ctx.cfg.text("w", "zero"));
  LocalOptions o;
  o.n_report = static_cast<std::size_t>(ctx.cfg.integer("local.n_report", static_cast<long>(o.n_report)));
  o.substeps = static_cast<std::size_t>(ctx.cfg.integer("local.substeps", static_cast<long>(o.substeps)));
  o.picard_tol = ctx.cfg.number("local.picard_tol", o.picard_tol);
  const double q = ctx.cfg.number("local.q", 4.0);
  const LocalSolve s = solve_local_Lq(op, u0, w, q, ctx.cfg.number("local.horizon", 1.0), o);
  CsvWriter csv(describe(ctx.params) + " q=" + format_number(q) + " T=" + format_number(s.T) + " alpha=" +
                    format_number(s.alpha) + " C1=" + format_number(s.C1) + " C2=" + format_number(s.C2) +
                    " M=" + format_number(s.M),
                {"t", "Lq_norm"});
  for (std::size_t k = 0; k < s.trajectory.size(); ++k)
    csv.add_row(std::vector<double>{s.trajectory.times[k], s.norms[k]});
  ctx.write("local_trajectory.csv", csv);
  ctx.say("T=" + format_number(s.T) + " alpha=" + format_number(s.alpha) + " picard_iterations=" +
          std::to_string(s.picard_iterations) + " max_defect=" + format_number(s.max_defect) +
          " scheme_tol=" + format_number(s.scheme_tol) + " continuous=" + (s.continuous ? "yes" : "no"));
}

void run_blowup_scan(Context& ctx) {
  const ProblemParams& pr = ctx.params;
  ScanSetup setup;
  setup.grid = read_grid(ctx.cfg);
  setup.semigroup = read_semigroup(ctx.cfg, 1e300);
  setup.u0 = parse_profile(ctx.cfg.text("u0", "zero"));
  setup.w = parse_profile(ctx.cfg.text("w"));
  setup.cfg = read_blowup(ctx.cfg);
  const double w_mass = volume_integral(setup.w, pr.N, setup.grid->r_max());
  if (!(w_mass > 0.0)) throw Error(ErrorCode::HypothesisViolation, "blowup-scan needs a forcing with positive mass");
  const ExtendedReal p_star = critical_forced(pr);

  double amplitude = 0.0;
  std::string how;
  if (ctx.cfg.has("scan.amplitude")) {
    amplitude = ctx.cfg.number("scan.amplitude");
    how = "given";
  } else {
    const double p_cal = ctx.cfg.number("scan.calibrate_p", p_star.is_infinite() ? pr.p : p_star.value() - 0.5);
    const double t_cal = ctx.cfg.number("scan.calibrate_t", 10.0);
    amplitude = calibrate_amplitude(pr, p_cal, t_cal, ctx.cfg.number("scan.amplitude_start", 0.01), setup);
    how = "calibrated: smallest a0*2^k blowing up at p=" + format_number(p_cal) + " before t=" + format_number(t_cal);
  }
  const std::vector<double> ps = ctx.cfg.numbers("scan.p_list");
  const int bisections = static_cast<int>(ctx.cfg.integer("scan.bisections", 4));

  CsvWriter csv(describe(pr) + " amplitude=" + format_number(amplitude) + " T_max=" + format_number(setup.cfg.T_max),
                {"p", "outcome", "t_star_or_Tmax", "max_norm"});
  std::ostringstream report;
  report << "parameters: " << describe(pr) << "\n"
         << "amplitude: " << format_number(amplitude) << " (" << how << ")\n"
         << "p_star: " << p_star.to_string() << "\n";
  try {
    const ScanResult res = scan_threshold(pr, ps, amplitude, setup, bisections);
    for (const auto& pt : res.points)
      csv.add_row({format_number(pt.p), to_string(pt.outcome), format_number(pt.t_end), format_number(pt.max_norm)});
    report << "bracket: [" << format_number(res.p_lo) << ", " << format_number(res.p_hi) << "]\n";
    ctx.say("bracket=[" + format_number(res.p_lo) + ", " + format_number(res.p_hi) + "] p_star=" + p_star.to_string() +
            " amplitude=" + format_number(amplitude));
  } catch (const Error& e) {
    report << "bracket: none (" << e.what() << ")\n";
    ctx.write("blowup_scan_report.txt", report.str());
    throw;
  }
  report << "note: outcomes are finite-horizon observations (Global means no blow-up before T_max on this grid).\n"
            "The bracket is numerical evidence for the threshold at this amplitude and horizon; it does not\n"
            "reproduce the asymptotic statement, and it moves with the amplitude and T_max.\n";
  ctx.write("blowup_scan.csv", csv);
  ctx.write("blowup_scan_report.txt", report.str());
}

void run_capacity_fit(Context& ctx) {
  const ProblemParams& pr = ctx.params;
  const std::string rule = ctx.cfg.text("capacity.rule", "parabolic");
  const std::vector<double> Rs = ctx.cfg.numbers("capacity.R_list");
  if (rule == "log") {
    const LogCapacityFit f = log_capacity_fit(pr, Rs);
    CsvWriter csv(describe(pr) + " cutoff=log", {"R", "space", "fitted_slope", "theory_slope", "raw_slope"});
    for (std::size_t i = 0; i < f.R.size(); ++i)
      csv.add_row(std::vector<double>{f.R[i], f.space[i], f.fitted, f.theory, f.raw_slope});
    ctx.write("capacity_fit.csv", csv);
    ctx.say("log-exponent fitted=" + format_number(f.fitted) + " theory=" + format_number(f.theory) +
            " raw_slope=" + format_number(f.raw_slope) + " R2=" + format_number(f.r_squared));
    return;
  }
  TimeRule tr;
  if (rule == "parabolic") tr = TimeRule::Parabolic;
  else if (rule == "power") tr = TimeRule::Power;
  else throw Error(ErrorCode::ConfigError, "capacity.rule must be parabolic, power or log");
  const CapacityFit f = capacity_exponent_fit(pr, Rs, tr, ctx.cfg.number("capacity.m", 0.0));
  CsvWriter csv(describe(pr) + " rule=" + rule + (tr == TimeRule::Power ? " m=" + format_number(f.m) : ""),
                {"R", "T", "I_time", "I_space", "I_forcing", "fitted_slope_time", "theory_slope_time",
                 "fitted_slope_space", "theory_slope_space"});
  for (const auto& row : f.rows)
    csv.add_row(std::vector<double>{row.R, row.T, row.I_time, row.I_space, row.I_forcing, f.time_fit.slope,
                                    f.theory_time, f.space_fit.slope, f.theory_space});
  ctx.write("capacity_fit.csv", csv);
  ctx.say("time slope fitted=" + format_number(f.time_fit.slope) + " theory=" + format_number(f.theory_time) +
          "; space slope fitted=" + format_number(f.space_fit.slope) + " theory=" + format_number(f.theory_space) +
          "; nonexistence predicted=" + (f.nonexistence_predicted ? "yes" : "no"));
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  for (const auto& [c, n] : command_names())
    if (n == name) return c;
  return std::nullopt;
}

std::string to_string(Command command) {
  for (const auto& [c, n] : command_names())
    if (c == command) return n;
  return "unknown";
}

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Config: return 2;
    case ErrorCategory::Hypothesis: return 3;
    case ErrorCategory::Numerical: return 4;
  }
  return 4;
}

RunResult run(Command command, const Config& cfg, const std::string& out_dir) {
  RunResult result;
  try {
    cfg.require_known(allowed_keys(command));
    if (cfg.has("command") && cfg.text("command") != to_string(command))
      result.summary += "note: command line overrides config command '" + cfg.text("command") + "'\n";
    const ProblemParams params = read_params(cfg);
    if (const ValidationResult v = validate(params); !v.valid()) {
      std::string msg = "parameter hypotheses violated:";
      for (const auto& s : v.violations) msg += " " + s + ";";
      throw Error(ErrorCode::HypothesisViolation, msg);
    }
    for (const char* key : {"u0", "w"})
      if (cfg.has(key)) parse_profile(cfg.text(key));
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorCode::ConfigError, "cannot create output directory '" + out_dir + "'");
    Context ctx{cfg, params, out_dir, result};
    switch (command) {
      case Command::Exponents: run_exponents(ctx); break;
      case Command::TransformCheck: run_transform_check(ctx); break;
      case Command::SemigroupCheck: run_semigroup_check(ctx); break;
      case Command::MildSolve: run_mild_solve(ctx); break;
      case Command::LocalSolve: run_local_solve(ctx); break;
      case Command::BlowupScan: run_blowup_scan(ctx); break;
      case Command::CapacityFit: run_capacity_fit(ctx); break;
    }
  } catch (const Error& e) {
    result.status = exit_code(e.category());
    result.error = e.what();
  }
  return result;
}

}  // namespace fujita
