#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qsim::cli {

inline constexpr std::uint64_t kDefaultSeed = 1234;

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 domain or parse error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsim::cli
