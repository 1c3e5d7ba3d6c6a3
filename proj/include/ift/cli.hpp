#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ift {

enum ExitCode : int {
    kExitOk = 0,
    kExitFindings = 1,
    kExitUsage = 2,
    kExitIo = 3,
};

/// Runs the `ift` command line; args exclude the program name. All output goes
/// to the given streams so the front end can be driven in-process.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ift
