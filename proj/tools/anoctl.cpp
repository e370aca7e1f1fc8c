#include "cli.hpp"

int main(int argc, char** argv) { return anoctl::run(argc, argv); }
