#include <iostream>
#include <string>
#include <vector>

#include "wedgecot/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return wedgecot::cli::run(args, std::cout, std::cerr);
}
