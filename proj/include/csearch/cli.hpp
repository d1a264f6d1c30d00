#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace csearch::cli {

// Runs one CLI invocation. `args` excludes the program name. Exit codes:
// 0 success, 2 argument error, 3 numeric/consistency error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace csearch::cli
