#include <kres/cli.hpp>

int main(int argc, char** argv) { return kres::cli_dispatch(argc, argv); }
