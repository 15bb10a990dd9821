#ifndef HMZF_CLI_HPP
#define HMZF_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace hmzf::cli {

/// Runs one CLI invocation (args exclude the program name) and writes results
/// to out, diagnostics to err. Exit status: 0 success / all checks pass,
/// 1 verification failure, 2 usage or domain error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace hmzf::cli

#endif
