#ifndef ITYPE_TOOLS_CLI_HPP
#define ITYPE_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace itype::cli {

// Exit statuses.
inline constexpr int ok = 0;
inline constexpr int failed = 1;  // fuel exhausted, invalid derivation, failing criterion
inline constexpr int usage = 2;   // bad flags or unparsable input

// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace itype::cli

#endif  // ITYPE_TOOLS_CLI_HPP
