#pragma once

#include <string>
#include <vector>

namespace droneplan {

/// Runs a CLI invocation (arguments without the program name) and returns
/// the process exit code: 0 success, 1 infeasible scenario, 2 bad input.
int run_cli(const std::vector<std::string>& args);

}  // namespace droneplan
