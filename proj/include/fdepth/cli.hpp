#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fdepth::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,  // computation failed
  kUsage = 2,    // bad flags, unknown method/model, bad config
  kIo = 3,       // file could not be opened or written
  kData = 4,     // input file is malformed
};

// Runs the command line `args` (program name excluded). Data goes to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fdepth::cli
