#include "symfrog/cli.hpp"

int main(int argc, char** argv) { return symfrog::cli::main_entry(argc, argv); }
