#include <iostream>
#include <string>
#include <vector>

#include "csearch/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return csearch::cli::run_cli(args, std::cout, std::cerr);
}
