#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rcork/types.hpp"

namespace rcork {

/// Parses a complex literal such as "2", "-1.5i", "0.3-2e-1i" or "i".
/// Throws ConfigError.
Complex parse_complex(const std::string& text);

/// Comma-separated complex literals.
std::vector<Complex> parse_complex_list(const std::string& text);

/// Command-line entry point. args excludes the program name.
/// Subcommands: solve, gen, check. Exit codes: 0 success (full convergence),
/// 2 partial convergence, 1 error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rcork
