#include "mup/cli.hpp"

int main(int argc, char** argv) { return mup::cli::main_entry(argc, argv); }
