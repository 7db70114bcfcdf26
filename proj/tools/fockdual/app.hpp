#pragma once

#include <string>
#include <vector>

namespace fockdual::cli {

enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitUsage = 2 };

/// Entry point of the `fockdual` runner; returns the process exit code.
int run(int argc, const char* const* argv);

/// Merges suite reports into one CSV with columns
/// test,n,s,p,degree,value,stderr,ratio,bound,pass.
std::string reports_to_csv(const std::vector<std::string>& paths);

}  // namespace fockdual::cli
