#include "preproj/cli.hpp"

int main(int argc, char** argv) { return preproj::cli::run_cli(argc, argv); }
