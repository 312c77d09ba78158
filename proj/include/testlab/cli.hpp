#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace testlab {

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitUsage = 2, kExitIo = 3 };

/// Entry point of the `testlab` tool; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace testlab
