#include "runner.hpp"

int main(int argc, char** argv) { return sqg::cli::main_entry(argc, argv); }
