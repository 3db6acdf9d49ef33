#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vcg/game.hpp"
#include "vcg/scenarios.hpp"
#include "vcg/strategies.hpp"

namespace vcg {

enum class ScenarioKind { Synthetic, Grid, Sensing };

std::string_view scenario_name(ScenarioKind kind);
ScenarioKind parse_scenario(std::string_view name);

struct ExperimentConfig {
  ScenarioKind scenario = ScenarioKind::Synthetic;
  StrategyConfig strategy;
  PayoffParams payoffs;
  std::vector<std::size_t> population_sizes{10, 20, 50, 100};
  std::size_t steps = 5000;
  std::size_t repetitions = 20;
  std::uint64_t seed = 1;
  // Worker threads for the sweep; 0 picks the hardware concurrency.
  std::size_t threads = 0;
  std::filesystem::path output = "results.csv";

  // `n` and `seed` are set per run by the harness.
  SyntheticConfig synthetic;
  GridConfig grid;
  SensingConfig sensing;
  // Measured data; empty means the synthetic generator is used.
  std::filesystem::path grid_data;
  std::filesystem::path trace_data;

  /// Throws ConfigError on the first violated invariant.
  void validate() const;
};

/// Reads an INI file of [section] key = value pairs on top of `base`.
/// Relative data paths resolve against the file's directory. Unknown
/// sections or keys are errors.
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

/// Applies one setting, e.g. ("experiment", "steps", "2000").
void apply_setting(ExperimentConfig& cfg, std::string_view section, std::string_view key,
                   const std::string& value);

/// "10, 50,100" -> {10, 50, 100}.
std::vector<std::size_t> parse_size_list(const std::string& text);

}  // namespace vcg
