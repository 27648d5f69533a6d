#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace annmat {

// Parses argv-style arguments (program name excluded), runs one subcommand,
// and writes results to `out` and diagnostics to `err`. Returns the process
// exit code: 0 success, 1 internal failure, 2 usage or parse error, 3
// invariant violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace annmat
