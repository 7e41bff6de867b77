#pragma once

#include <iosfwd>

namespace linsand::cli {

  // Process exit codes.
  enum Exit : int {
    exit_ok       = 0,
    exit_failed   = 1,  // a verification or internal check failed
    exit_usage    = 2,  // bad arguments or parameters outside a formula's range
    exit_budget   = 3,  // enumeration budget exceeded
  };

  // Runs the command line; output goes to `out` unless --out is given.
  int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err);

}  // namespace linsand::cli
