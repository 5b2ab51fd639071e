#include "embias/cli.hpp"

int main(int argc, char** argv) { return embias::run_cli(argc, argv); }
