#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qflow {

/// Runs one command line (arguments without the program name). Machine output
/// goes to `out`, diagnostics to `err`. Exit codes: 0 success / feasible /
/// valid, 1 infeasible or invalid flow, 2 usage or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qflow
