#ifndef CBDISCRIM_CLI_H
#define CBDISCRIM_CLI_H

#include <iosfwd>

namespace cbd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// The cbdiscrim command line. Reads CBDISCRIM_SEED from the environment.
/// Returns the process exit code; never throws.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace cbd

#endif
