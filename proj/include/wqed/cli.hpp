// cli.hpp: command-line front end

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wqed {

enum ExitCode : int { kExitOk = 0, kExitInternal = 1, kExitConfig = 2, kExitSolver = 3 };

/// Runs one command; `args` excludes the program name. Summaries go to `out`,
/// diagnostics to `err`; artifacts are written under the configured out_dir.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wqed
