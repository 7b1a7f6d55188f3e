#include <iostream>

#include "semroot/cli.hpp"

int main(int argc, char** argv) {
    return semroot::cli::run(argc, argv, std::cout, std::cerr);
}
