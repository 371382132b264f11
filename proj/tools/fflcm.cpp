#include <iostream>
#include <string>
#include <vector>

#include "fflcm/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fflcm::run(args, std::cout, std::cerr);
}
