#include <iostream>
#include <string>
#include <vector>

#include "fockjoin/cli.hpp"

int main(int argc, char** argv)
{
    return fockjoin::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
