#include "app.hpp"

int main(int argc, char** argv) { return pareto::cli::main_entry(argc, argv); }
