#include "susyb/cli.hpp"

int main(int argc, char** argv) { return susyb::cli::run_cli(argc, argv); }
