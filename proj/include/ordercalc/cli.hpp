#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ordercalc {

// Runs one command-line invocation.  `args` excludes the program name.
// Returns the process exit code: 0 on success, 1 when the inputs are outside
// a construction's domain, 2 on malformed input.  Error exits leave a single
// machine-readable line on `err`, prefixed "domain-error: " or
// "parse-error: ".
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ordercalc
