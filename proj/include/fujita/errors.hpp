#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fujita {

enum class ErrorCode {
  // configuration
  ConfigError,
  // hypothesis violations
  EmptyWindow,
  WindowViolation,
  Inadmissible,
  DegenerateTransform,
  ConditionViolation,
  HypothesisViolation,
  // numerical failures
  InsufficientResolution,
  StepFailure,
  Overflow,
  NotContracting,
  NoValidT,
  NoBracket,
  QuadratureFailure,
  PoorFit,
};

/// Coarse grouping used to map failures onto process exit codes.
enum class ErrorCategory { Config, Hypothesis, Numerical };

std::string_view to_string(ErrorCode code);
ErrorCategory category_of(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }

private:
  ErrorCode code_;
};

}  // namespace fujita
