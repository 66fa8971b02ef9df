#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace corp {

/// Exit statuses of the command-line tool.
enum ExitStatus : int { kExitOk = 0, kExitValidation = 1, kExitIo = 2 };

/// Runs the `corp` command line. `args` excludes the program name.
/// Subcommands: diagram, decompose, murphy, simulate {coverage, mse}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace corp
