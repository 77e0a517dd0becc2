#pragma once

#include <iosfwd>

#include "cli/config.hpp"

namespace irfit::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,  // a check did not pass, or an unexpected error
  kParseError = 2,
  kBudgetExhausted = 3,
  kAssumptionViolation = 4,
};

/// IR fit of the dam model. Writes trace.csv, summary.json, config.txt and
/// the four aligned snapshots (ASCII and PGM) of the final (x, y) to `out`.
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Finite-difference check of the particle energy gradient.
int cmd_gradcheck(const RunConfig& config, std::ostream& out, std::ostream& err);

/// One SPG trajectory at (frames_x, frames_y): aligned snapshots and fitness per frame.
int cmd_frames(const RunConfig& config, std::ostream& out, std::ostream& err);

/// SPG on the built-in box-constrained quadratics.
int cmd_spg_demo(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line: `irfit <run|gradcheck|frames|spg-demo> [options]`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace irfit::cli
