#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gutkin::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInvalidInput = 2;

/// Runs the command-line front end. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Seed used when neither --seed nor GUTKIN_SEED is given.
inline constexpr unsigned long long kDefaultSeed = 0;

}  // namespace gutkin::cli
