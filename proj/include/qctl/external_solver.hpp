#pragma once

// Running an external solver on an emitted script.

#include <optional>
#include <string>

namespace qctl {

enum class SolverAnswer { Sat, Unsat, Unknown };

struct ExternalResult {
  SolverAnswer answer = SolverAnswer::Unknown;
  std::string output;
  int exit_status = 0;
  bool timed_out = false;
};

/// Name of the environment variable holding the default solver command.
inline constexpr const char* kSolverEnv = "QCTLMC_SOLVER";

/// Runs `/bin/sh -c "<command> '<script>'"` and classifies the first token of
/// its standard output (sat / unsat / unknown). A timeout of 0 waits
/// forever; an expired timeout yields Unknown. Throws SolverError when the
/// command cannot be run or prints something else.
ExternalResult invoke_external_solver(const std::string& command, const std::string& script_path,
                                      double timeout_seconds = 0);

/// Value of QCTLMC_SOLVER, if set and non-empty.
std::optional<std::string> default_solver_command();

}  // namespace qctl
