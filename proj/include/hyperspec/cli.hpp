#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperspec::cli {

// Exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;
inline constexpr int exit_parse_error = 1;
inline constexpr int exit_bad_flags = 2;
inline constexpr int exit_not_converged = 3;
inline constexpr int exit_refuted = 4;
inline constexpr int exit_indeterminate = 5;
inline constexpr int exit_search_too_large = 6;

/// Runs `hyperspec <args...>`; args excludes the program name. `in` backs the
/// `-` input path.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace hyperspec::cli
