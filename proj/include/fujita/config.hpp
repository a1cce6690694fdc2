#pragma once

// Flat "key = value" experiment files. Lines starting with '#' and blank
// lines are ignored; keys may repeat only by mistake (ConfigError).

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fujita/exponents.hpp"
#include "fujita/grid.hpp"

namespace fujita {

class Config {
public:
  /// Throws Error(ConfigError) naming the offending line.
  static Config parse(std::string_view text);
  /// Throws Error(ConfigError) if the file cannot be read.
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::vector<std::string> keys() const;

  std::string text(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  long integer(const std::string& key) const;
  long integer(const std::string& key, long fallback) const;
  /// Comma-separated numbers; `a:b:n` expands to n log-spaced values and `a..b/n` to n evenly spaced values.
  std::vector<double> numbers(const std::string& key) const;
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback) const;

  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  /// Throws Error(ConfigError) for any key outside `allowed`.
  void require_known(const std::set<std::string>& allowed) const;

private:
  std::map<std::string, std::string> values_;
};

/// gaussian(center, width, amplitude) | bump(support, amplitude) |
/// power_law(decay, core) | zero. Throws Error(ConfigError) otherwise.
RadialProfile parse_profile(std::string_view spec);

/// N, sigma1, sigma2, rho, p (all required).
ProblemParams read_params(const Config& cfg);

}  // namespace fujita
