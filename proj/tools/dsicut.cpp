#include "dsicut/cli.hpp"

int main(int argc, char** argv) { return dsicut::cli::run(argc, argv); }
