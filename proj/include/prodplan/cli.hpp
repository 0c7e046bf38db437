#pragma once

#include <string>
#include <vector>

#include "prodplan/config.hpp"

namespace prodplan {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;      // unexpected failure (a bug)
inline constexpr int kExitConfig = 2;        // bad usage, config, or parameters
inline constexpr int kExitSolver = 3;        // a solver certificate could not be produced
inline constexpr int kExitOracle = 4;        // closed form requested but unavailable
inline constexpr int kExitVerification = 5;  // a verification gate failed

// Subcommand entry points.  Each writes its reports under out_dir (created if
// missing) and returns an exit code; unexpected exceptions propagate to
// run_cli, which maps them.
int cmd_solve(const RunConfig& cfg, const std::string& out_dir);
int cmd_oracle(const RunConfig& cfg, const std::string& out_dir);
int cmd_simulate(const RunConfig& cfg, const std::string& out_dir);
int cmd_verify(const RunConfig& cfg, const std::string& out_dir);
int cmd_compare(const RunConfig& cfg, const std::string& out_dir);

// Full command-line driver; args excludes the program name.  Never throws.
int run_cli(const std::vector<std::string>& args);

}  // namespace prodplan
