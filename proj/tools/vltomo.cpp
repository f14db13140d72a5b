#include <iostream>
#include <string>
#include <vector>

#include "vlt/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return vlt::cli::run(args, std::cout, std::cerr);
}
