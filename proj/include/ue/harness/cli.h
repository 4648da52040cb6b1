#ifndef UE_HARNESS_CLI_H_
#define UE_HARNESS_CLI_H_

#include <iosfwd>

namespace ue::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitBudget = 2;

// Entry point of the `ue` tool. CSV goes to --out when given, else to `out`;
// diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ue::harness

#endif  // UE_HARNESS_CLI_H_
