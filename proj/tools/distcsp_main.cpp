#include <iostream>

#include "distcsp_tools/cli.hpp"

int main(int argc, char** argv) {
    return distcsp::cli::run_cli({argv, argv + argc}, std::cout, std::cerr);
}
