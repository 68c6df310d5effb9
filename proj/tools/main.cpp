#include "simpfib/verify.hpp"

int main(int argc, char** argv) { return simpfib::cli_main(argc, argv); }
