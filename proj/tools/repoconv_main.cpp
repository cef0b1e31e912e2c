#include "repoconv/cli.hpp"

int main(int argc, char** argv) { return repoconv::run_cli(argc, argv); }
