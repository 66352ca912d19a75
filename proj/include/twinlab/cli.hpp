#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twinlab {

// Runs the command-line interface in-process: args is argv without the
// program name. Returns the process exit code and never throws; errors are
// printed to err as "error: <category>: <message>".
//   0 success          2 usage    3 config
//   4 io               5 format   6 domain
//   1 unexpected internal failure
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace twinlab
