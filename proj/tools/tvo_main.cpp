#include "tvo/cli.hpp"

int main(int argc, char** argv) { return tvo::run_cli(argc, argv); }
