#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tgmc::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  // bad input files, divergence, I/O
inline constexpr int kUsage = 2;    // flag parsing or validation

// Runs one command. `args` excludes the program name, e.g.
// {"generate", "--nodes", "20", "--out", "run/g"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tgmc::cli
