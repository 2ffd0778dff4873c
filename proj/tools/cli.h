#ifndef MAIDKIT_TOOLS_CLI_H_
#define MAIDKIT_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace maidkit {

enum ExitCode {
  kExitOk = 0,
  kExitInvalid = 1,
  kExitEmpty = 2,
  kExitIo = 3,
};

// Runs one command line (args excludes the program name).
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace maidkit

#endif  // MAIDKIT_TOOLS_CLI_H_
