#include "tcawp/cli.hpp"

int main(int argc, char** argv) { return tcawp::run(argc, argv); }
