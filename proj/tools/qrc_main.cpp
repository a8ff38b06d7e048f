#include "qrc/cli.hpp"

int main(int argc, char** argv) { return qrc::cli_main(argc, argv); }
