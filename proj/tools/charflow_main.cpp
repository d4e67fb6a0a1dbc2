#include "charflow/cli.hpp"

int main(int argc, char** argv) { return charflow::cli::main_entry(argc, argv); }
