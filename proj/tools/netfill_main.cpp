#include "netfill/cli.hpp"

int main(int argc, char** argv) { return netfill::cli_dispatch(argc, argv); }
