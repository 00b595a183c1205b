#include "serieslab/cli_support.hpp"

int main(int argc, char** argv) { return serieslab::run_cli(argc, argv); }
