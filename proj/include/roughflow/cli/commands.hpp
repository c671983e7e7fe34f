#pragma once

#include <iosfwd>

#include "roughflow/cli/config.hpp"

namespace roughflow {

// Exit codes shared by all subcommands:
//   0 pass, 2 convergence/verdict failure, 3 config error, 4 numeric blow-up.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitConfigError = 3;
inline constexpr int kExitBlowUp = 4;

int cmd_flow_solve(const ExperimentConfig& cfg, std::ostream& log);
int cmd_wong_zakai(const ExperimentConfig& cfg, std::ostream& log);
int cmd_diagnostics(const ExperimentConfig& cfg, std::ostream& log);
int cmd_schilder(const ExperimentConfig& cfg, std::ostream& log);
int cmd_ito_check(const ExperimentConfig& cfg, std::ostream& log);

// dispatch on cfg.kind; maps ConfigError/BlowUpError to exit codes
int run_command(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace roughflow
