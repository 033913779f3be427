#include <iostream>

#include "latinp/cli.hpp"

int main(int argc, char** argv)
{
    return latinp::cli::run(argc, argv, std::cout, std::cerr);
}
