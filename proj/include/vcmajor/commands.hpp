#pragma once

// Subcommands behind the vcbound executable. Each takes a parsed JSON
// configuration and returns its report in memory, so that callers (the
// executable, tests) decide where the bytes go.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "vcmajor/distribution.hpp"
#include "vcmajor/report.hpp"

namespace vcmajor {

// Schema violations: unknown keys, wrong types, out-of-range values.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Csv, Json };

Format parse_format(const std::string& s);  // throws ConfigError

struct CommandOptions {
  std::optional<std::uint64_t> seed;  // overrides the config seed
  std::optional<int> jobs;            // overrides the config jobs
};

struct CommandOutput {
  Report report;
  int exit_code = 0;  // 0 ok, 3 when a simulated bound check failed
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitViolation = 3;

std::vector<std::string> command_names();

// Throws ConfigError for schema problems and QuadratureError for numerical
// failures.
CommandOutput run_command(const std::string& command, const nlohmann::json& config,
                          const CommandOptions& opt = {});

nlohmann::json load_config(const std::string& path);  // throws ConfigError
Distribution parse_distribution(const nlohmann::json& j);

// The main document for a format. For CSV the summary goes to a separate
// key,value table (render_summary).
std::string render(const Report& r, Format f);
std::string render_summary(const Report& r);

}  // namespace vcmajor
