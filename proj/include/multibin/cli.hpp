#ifndef MULTIBIN_CLI_HPP_
#define MULTIBIN_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace multibin::cli {

// Runs one command; reports go to `out`, diagnostics to `err`. Exit status:
// 0 success, 1 infeasible, 2 usage or schema error, 3 size limit exceeded.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace multibin::cli

#endif
