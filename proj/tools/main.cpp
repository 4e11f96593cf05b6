#include "iondecoh/cli.hpp"

int main(int argc, char** argv) { return iondecoh::cli::run(argc, argv); }
