#pragma once

namespace allpay::cli {

// Parses and executes one command. Exit codes: 0 success, 2 validation or
// usage error, 3 numerical error, 1 internal error.
int run_cli(int argc, const char* const* argv);

}  // namespace allpay::cli
