#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bratteli::cli {

/// Exit codes: 0 success, 2 negative verdict, 1 usage or input error.
inline constexpr int kOk = 0;
inline constexpr int kError = 1;
inline constexpr int kNegative = 2;

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace bratteli::cli
