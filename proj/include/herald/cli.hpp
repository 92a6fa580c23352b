#pragma once

#include <iosfwd>

namespace herald {

// Command-line entry point, separated from main() so tests can drive it
// in-process. Returns the process exit code: 0 success, 1 verification or IO
// failure, 2 usage error, 3 numeric failure (truncation/convergence), 4
// annihilated branch or no feasible optimum.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace herald
