#include <iostream>
#include <string>
#include <vector>

#include "hansen/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return hansen::cli::main(args, std::cout, std::cerr);
}
