#include "relcc/cli.hpp"

int main(int argc, char** argv) { return relcc::cli_main(argc, argv); }
