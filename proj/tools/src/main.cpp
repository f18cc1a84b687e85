#include "ipl_cli/cli.hpp"

int main(int argc, char** argv) { return ipl::cli::run(argc, argv); }
