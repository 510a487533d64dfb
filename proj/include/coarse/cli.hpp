#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "coarse/io.hpp"

namespace coarse::cli {

/// Exit code 0: every check passed; 1: a verification failed (the report
/// carries the witness); 2: malformed input or usage.
struct CommandResult {
  int exit_code = 0;
  io::Json report;
  std::vector<std::string> artifacts;
};

/// Runs one subcommand. `args` excludes the program name. The report goes to
/// `out` (or the --out file), diagnostics to `err`.
CommandResult run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coarse::cli
