#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wsr::cli {

// Exit codes.
inline constexpr int kVerified = 0;
inline constexpr int kNotVerified = 1;
inline constexpr int kInputError = 2;

// Runs one command; args[0] is the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace wsr::cli
