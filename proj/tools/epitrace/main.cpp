#include "epitrace/cli/app.hpp"

int main(int argc, char** argv) { return epitrace::cli::run(argc, argv); }
