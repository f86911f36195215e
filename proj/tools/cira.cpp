#include <iostream>
#include <string>
#include <vector>

#include "cira/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return cira::run_cli(args, std::cout, std::cerr);
}
