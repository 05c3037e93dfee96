#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lavrentiev/experiments.hpp"

namespace lavrentiev {

/// Where named presets live: $LAVRENTIEV_PRESET_DIR, else the directory baked in at build time.
std::filesystem::path preset_directory();

/// Builds an experiment configuration from INI-style layers, later layers winning:
///
///   1. the preset named by `preset` (or by `[preset] base` inside the config file),
///   2. the config file,
///   3. `seed`, which replaces noise.seed,
///   4. `overrides`, each "section.key=value".
///
/// Unknown sections or keys and malformed values raise ConfigError.
ExperimentConfig load_config(const std::optional<std::filesystem::path>& config_file,
                             const std::optional<std::string>& preset, const std::optional<std::uint64_t>& seed,
                             const std::vector<std::string>& overrides);

/// Parses INI text directly (no preset lookup); mainly for tests.
ExperimentConfig parse_config(const std::string& ini_text);

/// u.csv and y.csv for the configured phantom.
void cmd_forward(const ExperimentConfig& c, const std::filesystem::path& out_dir);

/// reconstruction.csv, error.csv, trace.csv, summary.csv.
void cmd_invert(const ExperimentConfig& c, const std::filesystem::path& out_dir);

/// rates.csv and slopes.csv; level 0 uses the configured lambda, mu and delta.
void cmd_rates(const ExperimentConfig& c, const std::filesystem::path& out_dir);

} // namespace lavrentiev
