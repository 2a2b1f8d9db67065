#include "kruehr/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return kruehr::run_cli(argc, argv, std::cout, std::cerr);
}
