#include "annlab/cli.hpp"

int main(int argc, char** argv) { return annlab::run_cli(argc, argv); }
