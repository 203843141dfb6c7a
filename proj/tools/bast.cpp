#include "bast/cli.hpp"

int main(int argc, char** argv) { return bast::run(argc, argv); }
