#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace deepconn::cli {

// Exit codes: 0 success, 1 domain failure (infeasible instance, exhausted
// budget, failed check), 2 usage or input errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace deepconn::cli
