#include "ldakit/cli.hpp"

int main(int argc, char** argv) { return ldakit::cli::main(argc, argv); }
