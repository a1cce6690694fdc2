#include "fujita/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fujita/errors.hpp"
#include "fujita/fit.hpp"
#include "fujita/profiles.hpp"

namespace fujita {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view s, const std::string& what) {
  s = trim(s);
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty())
    throw Error(ErrorCode::ConfigError, what + ": '" + std::string(s) + "' is not a number");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

Config Config::parse(std::string_view text) {
  Config cfg;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key(trim(body.substr(0, eq)));
    const std::string value(trim(body.substr(eq + 1)));
    if (key.empty()) throw Error(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": empty key");
    if (cfg.has(key)) throw Error(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    cfg.values_[key] = value;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::vector<std::string> Config::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values_) out.push_back(k);
  return out;
}

std::string Config::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw Error(ErrorCode::ConfigError, "missing required key '" + key + "'");
  return it->second;
}

std::string Config::text(const std::string& key, const std::string& fallback) const {
  return has(key) ? text(key) : fallback;
}

double Config::number(const std::string& key) const { return parse_double(text(key), key); }

double Config::number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

long Config::integer(const std::string& key) const {
  const double v = number(key);
  if (v != std::floor(v)) throw Error(ErrorCode::ConfigError, key + ": expected an integer");
  return static_cast<long>(v);
}

long Config::integer(const std::string& key, long fallback) const { return has(key) ? integer(key) : fallback; }

std::vector<double> Config::numbers(const std::string& key) const {
  const std::string raw = text(key);
  std::vector<double> out;
  for (std::string_view item : split(raw, ',')) {
    if (item.empty()) throw Error(ErrorCode::ConfigError, key + ": empty list entry");
    if (item.find(':') != std::string_view::npos) {
      const auto parts = split(item, ':');
      if (parts.size() != 3) throw Error(ErrorCode::ConfigError, key + ": expected a:b:n");
      const double n = parse_double(parts[2], key);
      if (n < 2 || n != std::floor(n)) throw Error(ErrorCode::ConfigError, key + ": count must be an integer >= 2");
      const double a = parse_double(parts[0], key), b = parse_double(parts[1], key);
      if (!(a > 0.0 && b > 0.0)) throw Error(ErrorCode::ConfigError, key + ": log-spaced range needs positive ends");
      for (double v : log_spaced(a, b, static_cast<std::size_t>(n))) out.push_back(v);
    } else if (const auto dots = item.find(".."); dots != std::string_view::npos) {
      const auto slash = item.find('/', dots);
      if (slash == std::string_view::npos) throw Error(ErrorCode::ConfigError, key + ": expected a..b/n");
      const double a = parse_double(item.substr(0, dots), key);
      const double b = parse_double(item.substr(dots + 2, slash - dots - 2), key);
      const double n = parse_double(item.substr(slash + 1), key);
      if (n < 2 || n != std::floor(n)) throw Error(ErrorCode::ConfigError, key + ": count must be an integer >= 2");
      const auto count = static_cast<std::size_t>(n);
      for (std::size_t i = 0; i < count; ++i)
        out.push_back(i + 1 == count ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    } else {
      out.push_back(parse_double(item, key));
    }
  }
  return out;
}

std::vector<double> Config::numbers(const std::string& key, const std::vector<double>& fallback) const {
  return has(key) ? numbers(key) : fallback;
}

void Config::require_known(const std::set<std::string>& allowed) const {
  for (const auto& [k, v] : values_)
    if (!allowed.count(k)) throw Error(ErrorCode::ConfigError, "unknown key '" + k + "'");
}

RadialProfile parse_profile(std::string_view spec) {
  spec = trim(spec);
  if (spec == "zero") return zero_profile();
  const auto open = spec.find('(');
  if (open == std::string_view::npos || spec.back() != ')')
    throw Error(ErrorCode::ConfigError, "unknown profile '" + std::string(spec) + "'");
  const std::string name(trim(spec.substr(0, open)));
  std::vector<double> args;
  for (std::string_view a : split(spec.substr(open + 1, spec.size() - open - 2), ','))
    args.push_back(parse_double(a, "profile " + name));
  auto expect = [&](std::size_t n) {
    if (args.size() != n)
      throw Error(ErrorCode::ConfigError, "profile " + name + " takes " + std::to_string(n) + " arguments");
  };
  if (name == "gaussian") {
    expect(3);
    if (!(args[1] > 0.0)) throw Error(ErrorCode::ConfigError, "gaussian width must be positive");
    return gaussian(args[0], args[1], args[2]);
  }
  if (name == "bump") {
    expect(2);
    if (!(args[0] > 0.0)) throw Error(ErrorCode::ConfigError, "bump support must be positive");
    return bump(args[0], args[1]);
  }
  if (name == "power_law") {
    expect(2);
    if (!(args[1] > 0.0)) throw Error(ErrorCode::ConfigError, "power_law core must be positive");
    return power_law(args[0], args[1]);
  }
  throw Error(ErrorCode::ConfigError, "unknown profile '" + name + "'");
}

ProblemParams read_params(const Config& cfg) {
  ProblemParams p;
  p.N = static_cast<int>(cfg.integer("N"));
  p.sigma1 = cfg.number("sigma1");
  p.sigma2 = cfg.number("sigma2");
  p.rho = cfg.number("rho");
  p.p = cfg.number("p");
  return p;
}

}  // namespace fujita
