#include <iostream>

#include "fringe/cli.hpp"

int main(int argc, char** argv) {
    return fringe::cli::run(argc, argv, std::cout, std::cerr);
}
