#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bandrec::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { ok = 0, verification_failed = 1, precondition = 2, divergence = 3, io_failure = 4 };

/// Runs one command line (without the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "pi", "N*pi", "Npi" or a decimal; throws std::invalid_argument otherwise.
double parse_sigma(const std::string& text);

/// "a..b", "a", or a comma-separated list of either.
std::vector<int> parse_k_list(const std::string& text);

}  // namespace bandrec::cli
