#include "cli.hpp"

int main(int argc, char** argv) { return urdet::cli::run(argc, argv); }
