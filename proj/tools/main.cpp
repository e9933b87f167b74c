#include "reeb/cli.hpp"

int main(int argc, char** argv) { return reeb::cli::run(argc, argv); }
