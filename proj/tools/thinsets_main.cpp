#include "thinsets/cli.hpp"

int main(int argc, char** argv) { return thinsets::cli::run(argc, argv); }
