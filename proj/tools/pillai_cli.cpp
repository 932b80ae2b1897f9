#include "pillai/cli.hpp"

int main(int argc, char** argv) { return pillai::run_cli(argc, argv); }
