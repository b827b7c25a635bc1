#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace belltol::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kDomain = 2;
inline constexpr int kUnsupported = 3;
inline constexpr int kResource = 4;

// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace belltol::cli
