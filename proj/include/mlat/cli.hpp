#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mlat::cli {

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 validation failure or size cap, 2 usage, parse or I/O error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mlat::cli
