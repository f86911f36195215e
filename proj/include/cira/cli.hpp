#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cira {

/// Process exit codes of the `cira` command.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,     // unexpected runtime failure
    kExitUsage = 2,       // bad arguments, unreadable or malformed input files
    kExitNotCausal = 3,   // label/graph/testsuite on a non-causal sentence
    kExitUnparsed = 4,    // causal sentence the labeler could not segment
};

/// Runs the command line. `args[0]` is the program name. Results go to
/// `out` (or --out), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cira
