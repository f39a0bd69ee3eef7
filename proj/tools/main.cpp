#include "af/cli.hpp"

int main(int argc, char** argv) { return af::cli::main(argc, argv); }
