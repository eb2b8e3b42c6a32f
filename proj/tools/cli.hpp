#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace binomid::cli {

/// Runs one command line (args[0] is the program name). Reports go to
/// `out`, diagnostics to `err`. Returns 0 when every requested check
/// passes, 1 on a mathematical failure, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace binomid::cli
