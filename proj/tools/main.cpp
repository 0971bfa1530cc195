#include "hp/cli.hpp"

int main(int argc, char** argv) { return hp::cli_main(argc, argv); }
