#include <iostream>

#include "radbound/cli.hpp"

int main(int argc, char** argv) {
    return radbound::cli::run(argc, argv, std::cout, std::cerr);
}
