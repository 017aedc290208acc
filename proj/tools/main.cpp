#include "commands.hpp"

int main(int argc, char **argv) { return spinor::cli::run_cli(argc, argv); }
