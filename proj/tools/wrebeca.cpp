#include "commands.hpp"

int main(int argc, char** argv) { return wrebeca::cli::run(argc, argv); }
