#pragma once

#include <iosfwd>
#include <string>

#include "casimir/cli/config.hpp"
#include "casimir/cli/output.hpp"

namespace casimir::cli {

struct CommandResult {
  Metadata metadata;
  Table table;
};

CommandResult cmd_force(const RunConfig& config);
CommandResult cmd_gradient(const RunConfig& config);
CommandResult cmd_compare(const RunConfig& config);
CommandResult cmd_converge(const RunConfig& config);
CommandResult cmd_theta(const RunConfig& config);

/// Dispatches by name, adds the common metadata (version, config hash, ...).
/// Warnings go to warn.
CommandResult run_command(const std::string& command, const RunConfig& config,
                          const Settings& settings, std::ostream& warn);

/// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

}  // namespace casimir::cli
