#include <iostream>
#include <string>
#include <vector>

#include "wsde/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return wsde::cli::run(args, std::cout, std::cerr);
}
