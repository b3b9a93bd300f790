#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fairdiv::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kBadInput = 2;
inline constexpr int kClassMismatch = 3;
inline constexpr int kInternalError = 4;

// args excludes the program name. FAIRDIV_STEP_LIMIT, when set, overrides the
// default step bound of `run` and `bench`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fairdiv::cli
