#include <iostream>

#include "lseq/cli.hpp"

int main(int argc, char** argv) {
    return lseq::cli::run(argc, argv, std::cout, std::cerr);
}
