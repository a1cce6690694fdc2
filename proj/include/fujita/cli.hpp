#pragma once

// Batch orchestration behind the fujita_lab executable.

#include <optional>
#include <string>
#include <vector>

#include "fujita/config.hpp"
#include "fujita/errors.hpp"

namespace fujita {

enum class Command { Exponents, TransformCheck, SemigroupCheck, MildSolve, BlowupScan, CapacityFit, LocalSolve };

std::optional<Command> parse_command(const std::string& name);
std::string to_string(Command command);

/// 2 for configuration errors, 3 for hypothesis violations, 4 for numerical failures.
int exit_code(ErrorCategory category);

struct RunResult {
  int status = 0;
  std::vector<std::string> files;  // artifacts written, in order
  std::string summary;             // human-readable lines for stdout
  std::string error;               // message for stderr when status != 0
};

/// Validates the keys and parameters of `cfg` for `command` before any
/// computation, runs it and writes its CSV artifacts into out_dir. Never
/// throws for fujita::Error; those become the returned status.
RunResult run(Command command, const Config& cfg, const std::string& out_dir);

}  // namespace fujita
