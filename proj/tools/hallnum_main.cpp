#include "hallnum/cli.hpp"

int main(int argc, char** argv) { return hallnum::cli::run(argc, argv); }
