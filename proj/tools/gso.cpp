#include "gso/cli.hpp"

int main(int argc, char** argv) { return gso::cli(argc, argv); }
