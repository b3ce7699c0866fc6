#pragma once

// Declarative experiment runs: one flat JSON config in, CSV files plus a
// manifest out. Every command is deterministic given the config and seed.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "scd/monte_carlo.hpp"

namespace scd::cli {

/// Bad or inconsistent configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  nlohmann::json params = nlohmann::json::object();  // flat key -> value
  std::uint64_t seed = 1;
  int workers = 0;
  std::filesystem::path out_dir = ".";

  McOptions mc(std::size_t default_samples) const;
};

/// Reads and checks the config file (may be absent); --seed and --workers override file values.
RunConfig load_config(const std::string& command, const std::optional<std::filesystem::path>& file,
                      std::optional<std::uint64_t> seed, std::optional<int> workers,
                      const std::filesystem::path& out_dir);

struct CommandResult {
  std::vector<std::filesystem::path> files;
  nlohmann::json results = nlohmann::json::object();
};

const std::vector<std::string>& command_names();

/// Throws ConfigError, NonConvergenceError, or anything the library raises.
CommandResult run_command(const RunConfig& cfg);

CommandResult cmd_spectrum(const RunConfig& cfg);
CommandResult cmd_p_curve(const RunConfig& cfg);
CommandResult cmd_hist(const RunConfig& cfg);
CommandResult cmd_thermal(const RunConfig& cfg);
CommandResult cmd_bell_volume(const RunConfig& cfg);
CommandResult cmd_qutrit(const RunConfig& cfg);
CommandResult cmd_df(const RunConfig& cfg);
CommandResult cmd_independence(const RunConfig& cfg);
CommandResult cmd_prange(const RunConfig& cfg);

// manifest.cpp
std::string sha256_file(const std::filesystem::path& file);
/// <out>/<command>.manifest.json with config echo, version, wall time and output digests.
std::filesystem::path write_manifest(const RunConfig& cfg, const CommandResult& result, double wall_seconds);

}  // namespace scd::cli
