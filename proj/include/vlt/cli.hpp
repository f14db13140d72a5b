#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace vlt::cli {

enum ExitCode : int {
    ok = 0,
    unexpected = 1,
    config_error = 2,
    math_error = 3,
    io_error = 4,
};

/// Runs the command-line tool with args[0] as program name. Errors are
/// reported on `err` and mapped to exit codes; nothing is thrown.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Exit code for a library exception.
int exit_code_for(const std::exception& e);

}  // namespace vlt::cli
