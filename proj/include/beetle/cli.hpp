#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace beetle::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kInternalError = 1,
  kUsageError = 2,
  kNoFeasible = 3,
};

/// Runs one invocation. `args` excludes the program name, e.g.
/// {"run", "--algo", "bso", "--problem", "F1"}.
///
///   run          one optimizer run; writes run.json and curve.csv
///   bench        trial matrix over algorithms x problems; writes
///                compare.json, compare.txt and bench.json
///   bench --list the problem catalog as JSON
///   constrained  pressure vessel (pv) or Himmelblau (hb) trials; reports the
///                best feasible design
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace beetle::cli
