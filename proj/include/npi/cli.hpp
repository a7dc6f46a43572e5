#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace npi::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kDataError = 2 };

/// Runs the command line `args` (without the program name). Files go where
/// --out points; without --out the primary output is written to `out`.
/// Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Seed for grid point `index` of a sweep, derived from the run seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace npi::cli
