// cli.hpp — command-line frontend: compare / mc / verify / frame-info.
// Exit codes: 0 success (all checks pass), 1 a verification check failed,
// 2 usage or parse error.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace infoframe::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace infoframe::cli
