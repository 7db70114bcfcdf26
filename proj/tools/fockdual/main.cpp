#include "app.hpp"

int main(int argc, char** argv) { return fockdual::cli::run(argc, argv); }
