#include <iostream>

#include "helix/cli/app.hpp"

int main(int argc, char **argv) { return helix::cli::run(argc, argv, std::cout, std::cerr); }
