#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flowmag::cli {

/**
 * Parses and dispatches one CLI invocation. Reports go to `out`, diagnostics
 * to `err`. Returns 0 on success, 1 on domain errors (violated preconditions,
 * invalid flow graphs, divergent parameters), 2 on I/O, parse, and usage
 * errors.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace flowmag::cli
