#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qfid::cli {

/// Process exit codes.
enum ExitCode : int { kSuccess = 0, kPropertyFailure = 1, kUsageError = 2 };

/// Runs `quditfid <args...>` in-process. `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// Directory holding the shipped fixture files. QUDITFID_FIXTURES overrides
/// the build-time location.
std::filesystem::path fixture_dir();

struct BenchRecord {
  std::size_t dim;
  std::string measure;
  double median_seconds;
  int reps;
};

/// Times alt_fidelity and uhlmann on one seeded random pair per dimension.
/// Input generation is outside the timed region.
std::vector<BenchRecord> run_bench(std::span<const std::size_t> dims, int reps, std::uint64_t seed);

}  // namespace qfid::cli
