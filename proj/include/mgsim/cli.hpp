#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mgsim {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitBlowUp = 3,
};

/// Subcommands run, verify, mms, oracle, spectrum and config-reference.
/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace mgsim
