#pragma once

#include "gmesim/config.hpp"
#include "gmesim/report_io.hpp"

#include <cstdint>
#include <iosfwd>
#include <string_view>

namespace gmesim {

enum class Command { Single, Sweep, Validate, Oracle };
std::string_view label(Command c);

/// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitAccuracy = 2;
inline constexpr int kExitIo = 3;

/// Maps a ModelReport error code onto an exit status.
int exit_status_for_report(int error_code);

/// Tolerances the oracle command checks against.
inline constexpr double kOracleDeltaTolerance = 1e-6;
inline constexpr double kOracleHadamardTolerance = 1e-4;

/// Static closed forms next to the numerical functionals, one row per branch
/// pair. Throws ValidationError for non-static geometry.
Table oracle_table(const RunConfig& config);

/// Invariant suite on one configuration: columns check, value, tolerance, pass.
Table validate_table(const RunConfig& config);

struct CommandResult {
  Table table;
  int status = kExitOk;
};

/// Runs one subcommand on a parsed configuration without writing output.
CommandResult run_command(Command command, const RunConfig& config);

/// Full command line entry point. Tabular output goes to `out` (or the
/// configured path); diagnostics go to `err`. Returns the exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gmesim
