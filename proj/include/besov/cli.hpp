#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "besov/report.hpp"

namespace besov::cli {

enum ExitCode : int { kOk = 0, kAssertionFailure = 1, kInvalidConfig = 2, kIoFailure = 3 };

inline constexpr int kSchemaVersion = 1;

/// The configuration does not match the schema.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::filesystem::path config;
  std::filesystem::path out = ".";
  std::optional<std::uint64_t> seed;  // overrides the config seed
  bool quiet = false;
};

/// Loads the config file and dispatches; never throws.
int run(const RunOptions& options, std::ostream& log);
/// Same, on an already parsed config.
int run_config(const Json& config, const std::filesystem::path& out,
               std::optional<std::uint64_t> seed, bool quiet, std::ostream& log);

}  // namespace besov::cli
