#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace iso {

// Exit codes: 0 success, 1 usage or validation error, 2 verification failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitVerifyFailed = 2;

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace iso
