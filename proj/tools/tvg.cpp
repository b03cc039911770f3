#include "tvg/cli.hpp"

int main(int argc, char** argv) { return tvg::cli::dispatch(argc, argv); }
