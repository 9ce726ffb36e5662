// Command-line front end: parses a subcommand, builds the requested
// experiment, runs the exact or sampled evaluation and writes a JSON or CSV
// report. Kept as a library entry point so tests can drive it in process.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsl::cli {

// Executes one invocation. `args` holds the tokens after the program name.
// Reports are written to `out`; diagnostics and usage go to `err`.
// Returns 0 on success, 2 on configuration errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsl::cli
