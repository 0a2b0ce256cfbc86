#include "knotconc/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    knotconc::RunResult r = knotconc::run(args);
    std::cout << r.out;
    std::cerr << r.err;
    return r.exit_code;
}
