#pragma once

#include <filesystem>
#include <iosfwd>

namespace kerrcomm::cli {

/// Process exit codes; stable across releases.
enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 2,
  kUnstable = 3,
  kNumericalFailure = 4,
};

struct Options {
  std::filesystem::path out;  ///< empty: no files written (point) / "." (sweep)
  int threads = 0;
  bool oracle = false;
};

int validate(const std::filesystem::path& config, std::ostream& out, std::ostream& err);
int point(const std::filesystem::path& config, const Options& options, std::ostream& out,
          std::ostream& err);
int sweep(const std::filesystem::path& config, const Options& options, std::ostream& out,
          std::ostream& err);

const char* version();

}  // namespace kerrcomm::cli
