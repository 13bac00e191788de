#pragma once

#include <iosfwd>
#include <string>

#include "sumlab/config.hpp"

namespace sumlab::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigInvalid = 2,
  kBudgetExhausted = 3,
  kInvariantFailure = 4,
};

/// Runs one of verify, kernel, pack, scan, summability, stage. Artifacts go
/// to cfg.output_dir; progress and results go to `log`.
int run(const std::string& command, const RunConfig& cfg, std::ostream& log);

}  // namespace sumlab::cli
