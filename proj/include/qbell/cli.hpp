#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace qbell::cli {

/// Dispatch a full command line (without the program name). Exit status: 0 on
/// success, 1 when --strict is set and a verdict is violated, 2 on input
/// errors (bad flags, missing or malformed files).
int run_command(const std::vector<std::string>& args, std::ostream& out = std::cout,
                std::ostream& err = std::cerr);

} // namespace qbell::cli
