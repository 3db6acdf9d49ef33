#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vcg/config.hpp"
#include "vcg/metrics.hpp"
#include "vcg/scenarios.hpp"

namespace vcg {

/// Everything recorded during one (population, repetition) run.
struct RunTrace {
  std::size_t population = 0;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  // series[static_cast<size_t>(m)][t] is measure m at round t (0-based).
  std::array<std::vector<double>, kMeasureCount> series;
  std::vector<double> cumulative_quality;
  std::size_t successes = 0;
  ScenarioStats scenario_stats;

  const std::vector<double>& at(Measure m) const { return series[static_cast<std::size_t>(m)]; }
};

/// Seed of one run: SplitMix64 chain over (base, population, repetition).
/// Independent of the execution order, so serial and parallel sweeps agree.
std::uint64_t run_seed(std::uint64_t base, std::size_t population, std::size_t repetition);

/// Builds the configured scenario for a population. Data-backed scenarios
/// fix their own population; a mismatch is a ConfigError.
std::unique_ptr<Scenario> make_scenario(const ExperimentConfig& cfg, std::size_t population,
                                        std::uint64_t seed);

RunTrace run_simulation(const ExperimentConfig& cfg, std::size_t population,
                        std::size_t repetition);

/// Runs every (population, repetition) pair, in parallel when cfg.threads
/// allows. Ordered by population, then repetition.
std::vector<RunTrace> run_all(const ExperimentConfig& cfg);

struct ResultRow {
  std::string scenario;
  std::string strategy;
  std::size_t population = 0;
  std::optional<std::size_t> repetition;  // nullopt for the "agg" summary rows
  std::size_t timestep = 0;               // 1-based
  Measure measure = Measure::Success;
  double value = 0.0;
  std::optional<double> ci;  // 95% half-width, summary rows only

  bool operator==(const ResultRow&) const = default;
};

/// run_all followed by result_rows. Rows are ordered by (population,
/// repetition, timestep, measure) with "agg" after the numbered repetitions.
std::vector<ResultRow> sweep(const ExperimentConfig& cfg);

/// Per population: detail rows for every repetition, then aggregate rows
/// (omitted with a notice when there is a single repetition).
std::vector<ResultRow> result_rows(const ExperimentConfig& cfg, const std::vector<RunTrace>& runs);

inline constexpr const char* kResultsHeader =
    "scenario,strategy,population,repetition,timestep,measure,value,ci";

void write_results(const std::vector<ResultRow>& rows, const std::filesystem::path& path);
std::vector<ResultRow> read_results(const std::filesystem::path& path);

}  // namespace vcg
