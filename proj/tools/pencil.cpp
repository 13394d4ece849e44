#include "pencils/cli.hpp"

int main(int argc, char** argv) { return pencils::cli::run(argc, argv); }
