#ifndef POLYBOUND_TOOLS_CLI_H_
#define POLYBOUND_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace polybound::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerdict = 1;     // unbounded, violated, invalid witness
inline constexpr int kInputError = 2;  // bad arguments or files
inline constexpr int kCapExceeded = 3;
inline constexpr int kInternalError = 4;

// Runs one command line (without the program name). Reports go to out,
// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace polybound::cli

#endif  // POLYBOUND_TOOLS_CLI_H_
