#pragma once

#include <iostream>

namespace epitrace::cli {

/// Parses arguments and runs one subcommand. Returns the process exit
/// code: 0 on success, 1 on a runtime or annotation failure, 2 on bad
/// arguments or input data.
int run(int argc, const char* const* argv, std::ostream& out = std::cout,
        std::ostream& err = std::cerr);

}  // namespace epitrace::cli
