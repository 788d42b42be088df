#include "svloja/cli.hpp"

int main(int argc, char **argv) { return svloja::cli::run(argc, argv); }
