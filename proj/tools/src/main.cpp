#include "allpay/cli.hpp"

int main(int argc, char** argv) { return allpay::cli::run_cli(argc, argv); }
