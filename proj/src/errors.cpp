#include "fujita/errors.hpp"

namespace fujita {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::WindowViolation: return "WindowViolation";
    case ErrorCode::Inadmissible: return "Inadmissible";
    case ErrorCode::DegenerateTransform: return "DegenerateTransform";
    case ErrorCode::ConditionViolation: return "ConditionViolation";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::InsufficientResolution: return "InsufficientResolution";
    case ErrorCode::StepFailure: return "StepFailure";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NotContracting: return "NotContracting";
    case ErrorCode::NoValidT: return "NoValidT";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::PoorFit: return "PoorFit";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
      return ErrorCategory::Config;
    case ErrorCode::EmptyWindow:
    case ErrorCode::WindowViolation:
    case ErrorCode::Inadmissible:
    case ErrorCode::DegenerateTransform:
    case ErrorCode::ConditionViolation:
    case ErrorCode::HypothesisViolation:
      return ErrorCategory::Hypothesis;
    default:
      return ErrorCategory::Numerical;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace fujita
