#include "cli.hpp"

int main(int argc, char** argv) { return molopt::cli::run(argc, argv); }
