#include <iostream>
#include <string>
#include <vector>

#include "meu/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return meu::run_cli(args, std::cout, std::cerr);
}
