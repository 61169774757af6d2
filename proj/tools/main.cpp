#include "lyapna/cli.hpp"

int main(int argc, char** argv) { return lyapna::cli_run(argc, argv); }
