#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qmpsig::cli {

/// Process exit codes; a stable public contract.
enum ExitCode : int {
  kOk = 0,            // ACCEPT, Feasible, or success
  kReject = 1,        // REJECT, Infeasible, collisions found
  kInvalidArgs = 2,   // invalid parameters
  kIoFailure = 3,     // file could not be read or written
  kMalformed = 4,     // malformed or mismatched artifact
  kBudget = 5,        // signature copy budget exhausted
  kUndecided = 6,     // feasibility oracle undecided
  kNoSeparation = 7,  // calibration found no valid threshold
};

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmpsig::cli
