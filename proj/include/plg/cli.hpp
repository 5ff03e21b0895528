#pragma once

// Command dispatch for the plgauss tool: validate, compute, build, render.

#include <iosfwd>
#include <string>
#include <vector>

namespace plg {

enum ExitCode { kExitOk = 0, kExitViolation = 2, kExitDegenerate = 3, kExitUsage = 4 };

/// Runs one command line (args excludes the program name). Reports go to
/// `out` unless -o is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plg
