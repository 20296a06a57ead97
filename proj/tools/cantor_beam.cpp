#include "cli.hpp"

int main(int argc, char** argv) { return cantor_beam::cli::run(argc, argv); }
