#include "peakwave/cli.hpp"

int main(int argc, char** argv) { return peakwave::cli::dispatch(argc, argv); }
