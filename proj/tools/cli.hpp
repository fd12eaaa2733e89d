#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toral::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFail = 1;
inline constexpr int kInputError = 2;

/// Runs `toral <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toral::cli
