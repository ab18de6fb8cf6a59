#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wikiindex::cli {

// Stable process exit codes, one per error class.
enum ExitCode : int {
  kOk = 0,
  kUnexpected = 1,
  kConfig = 2,
  kSeedNotFound = 3,
  kIo = 4,
  kInput = 5,
  kNetwork = 6,
  kCorpus = 7,
  kCheckpoint = 8,
  kReportMissing = 9,
};

// Runs one command line. args[0] is the program name. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wikiindex::cli
