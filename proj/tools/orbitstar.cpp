#include <iostream>

#include "orbitstar/clirun.hpp"

int main(int argc, char** argv) {
    return orbitstar::cli::run_command(argc, argv, std::cout, std::cerr);
}
