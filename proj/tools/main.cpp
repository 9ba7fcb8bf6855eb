#include <iostream>

#include "tgrs/cli.hpp"

int main(int argc, char** argv) {
    return tgrs::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
