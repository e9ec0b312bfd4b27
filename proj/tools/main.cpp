#include "cli/app.hpp"

int main(int argc, char** argv) { return dfcast::cli::run(argc, argv); }
