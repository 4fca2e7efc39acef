#pragma once

#include "tfbound/config.hpp"

#include <ostream>
#include <string>

namespace tfbound {

enum ExitStatus : int { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3, kExitCache = 4 };

/// Runs one of tf-solve, energy, minimize, spectrum, bounds, converge.
/// Diagnostics and error messages go to `log`; results go to cfg.out or stdout.
int run_subcommand(const std::string& name, const RunConfig& cfg, std::ostream& log);

}  // namespace tfbound
