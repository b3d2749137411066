#include "commands.hpp"

int main(int argc, char** argv) { return uptri::cli::run(argc, argv, std::cout, std::cerr); }
