#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace takagi::cli {

/// Runs one command line (without the program name). Returns the process
/// exit status: 0 on success, 2 on parse or validation errors, 1 when a
/// computational cap is hit. Errors go to `err` as one line of JSON.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace takagi::cli
