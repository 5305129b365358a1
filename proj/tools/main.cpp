#include "sofic/cli.hpp"

int main(int argc, char** argv) { return sofic::cli::run(argc, argv); }
