#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ulrich_kit::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes: 0 pass, 1 fail, 2 usage or malformed input, 3 unsupported model.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ulrich_kit::cli
