#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace clusterx::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name. Output is buffered and written once.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clusterx::cli
