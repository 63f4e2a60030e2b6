#include "cli.hpp"

int main(int argc, char** argv) { return dhm::cli::cli_main(argc, argv); }
