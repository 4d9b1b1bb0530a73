#include <iostream>
#include <string>
#include <vector>

#include "bargwig/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bargwig::cli::run(std::move(args), std::cout, std::cerr);
}
