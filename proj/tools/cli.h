#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace edgeins {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitInvalid = 3;
inline constexpr int kExitTimeout = 4;

inline constexpr std::uint32_t kDefaultSeed = 1729;

/// Runs one command line (without the program name). Results go to `out`
/// unless redirected with -o, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace edgeins
