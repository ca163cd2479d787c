#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ucs::cli {

// Exit codes of the ucs tool.
enum ExitCode : int {
  kOk = 0,
  kIoError = 1,     // unreadable or malformed input files, unwritable output
  kUsage = 2,       // bad flags, out-of-range parameters, unknown lemma
  kRefused = 3,     // hypothesis violated in strict mode, enumeration cap exceeded
};

// Runs the tool with `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ucs::cli
