#include "oclab/cli.hpp"

int main(int argc, char** argv) { return oclab::run(argc, argv); }
