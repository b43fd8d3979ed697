#include "ppsdft/cli.hpp"

int main(int argc, char** argv) { return ppsdft::cli_main(argc, argv); }
