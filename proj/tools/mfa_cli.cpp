#include "mfa/cli.hpp"

int main(int argc, char** argv) { return mfa::cli_main(argc, argv); }
