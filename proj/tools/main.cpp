#include "wexpand/io.hpp"

int main(int argc, char** argv) { return wexpand::run_cli(argc, argv); }
