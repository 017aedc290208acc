#pragma once

// Subcommands of the spinor CLI. Each command reads a JSON parameter object
// (built from flags, or loaded from a previous manifest), writes CSV files to
// an output directory and records a manifest next to them.

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace spinor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kManifestSchemaVersion = 1;

struct ExecutionOptions {
  std::filesystem::path out_dir = ".";
  int jobs = 1;
  bool resume = false;
};

/// Parses "lo:hi:count" (linear, inclusive), "lo:hi:count:log" or "a,b,c".
std::vector<double> parse_grid(const std::string &text);

/// Column schema of each command's primary CSV.
std::vector<std::string> groundscan_columns();
std::vector<std::string> ramp_columns();
std::vector<std::string> ramp_sweep_columns();
std::vector<std::string> noise_columns();
std::vector<std::string> noise_theta_columns();
std::vector<std::string> quench_columns();
std::vector<std::string> decompose_columns();

/// Runs `command` with `params`, writes outputs and the manifest
/// <command>.manifest.json, and returns the manifest. Throws
/// std::invalid_argument for bad parameters and NumericalError on numerical
/// failure.
nlohmann::json execute(const std::string &command, const nlohmann::json &params,
                       const ExecutionOptions &options, std::ostream &log);

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, char **argv);

} // namespace spinor::cli
