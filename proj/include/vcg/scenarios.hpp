#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vcg/game.hpp"
#include "vcg/rng.hpp"

namespace vcg {

/// Closed interval a quantity is expected to fall in. Learners discretise
/// observations over these.
struct Support {
  double low = 0.0;
  double high = 1.0;
};

// ---------------------------------------------------------------- synthetic

/// Values ~ Uniform(value_low, value_high); costs ~ Normal(value, cost_sigma)
/// clamped at 0; threshold = threshold_fraction * n * mean value.
struct SyntheticConfig {
  std::size_t n = 10;
  double value_low = 0.5;
  double value_high = 1.5;
  double cost_sigma = 0.2;
  double threshold_fraction = 0.8;
  std::uint64_t seed = 0;
  // Redraw the value vector until full contribution meets the threshold.
  bool resample_infeasible = true;

  void validate() const;
  double threshold() const;
};

/// One synthetic round. `redraws`, when given, is incremented once per
/// infeasible value vector that was discarded.
RoundInput synthetic_round(const SyntheticConfig& cfg, Rng& rng, std::size_t* redraws = nullptr);

// --------------------------------------------------------------- smart grid

/// Per-household renewable production and baseline load at one timestep.
/// Lists are aligned with `household_ids` (sorted).
struct GridRecord {
  std::int64_t timestep = 0;
  std::vector<std::string> household_ids;
  std::vector<double> production;
  std::vector<double> baseline;

  std::size_t size() const { return production.size(); }
  bool operator==(const GridRecord&) const = default;
};

struct GridConfig {
  // Comfort cost per unit of renounced charge, with multiplicative
  // Normal(1, comfort_noise) jitter clamped at 0.
  double comfort_factor = 1.0;
  double comfort_noise = 0.2;
  // Per-round EV charge request of each household ~ Uniform(need_low, need_high).
  double need_low = 0.5;
  double need_high = 1.5;
};

/// Total production minus total baseline load.
double surplus(const GridRecord& record);

/// Values are the charge each household would renounce, costs are comfort
/// costs proportional to it, and the threshold is the charge that must be
/// renounced for demand to fit the surplus: max(0, sum(ev_need) - surplus).
RoundInput grid_round(const GridRecord& record, std::span<const double> ev_need,
                      const GridConfig& cfg, Rng& rng);

// ---------------------------------------------------- participatory sensing

struct TraceRecord {
  std::string vehicle_id;
  std::int64_t timestep = 0;
  double speed = 0.0;          // >= 0
  double trip_position = 0.0;  // progress from origin (0) to destination (1)

  bool operator==(const TraceRecord&) const = default;
};

struct SensingConfig {
  // Raw |delta speed| is divided by this; pick it so the population mean of
  // values is about 1. Zero means "estimate from the data".
  double speed_change_scale = 0.0;
  double cost_scale = 1.0;
  double threshold_fraction = 0.8;
  // Reject vehicles without a previous speed instead of using a zero change.
  bool strict = false;
};

/// Cost of reporting at a given trip position: highest at the origin and the
/// destination, zero at the midpoint.
double proximity_cost(double trip_position, double cost_scale);

/// One sensing round from the current record of every vehicle and its
/// previous speed (nullopt for a first observation).
RoundInput sensing_round(std::span<const TraceRecord> current,
                         std::span<const std::optional<double>> previous_speed,
                         const SensingConfig& cfg);

// ------------------------------------------------------------------- CSV io

/// Schema: vehicle_id,timestep,speed,trip_position. Result is sorted by
/// (timestep, vehicle_id). Per-vehicle timesteps must strictly increase.
std::vector<TraceRecord> ingest_trace_csv(const std::filesystem::path& path);
void write_trace_csv(const std::filesystem::path& path, std::span<const TraceRecord> records);

/// Schema: timestep,household_id,production,baseline (long format). Every
/// timestep must list the same households.
std::vector<GridRecord> ingest_grid_csv(const std::filesystem::path& path);
void write_grid_csv(const std::filesystem::path& path, std::span<const GridRecord> records);

// -------------------------------------------------------- round generators

struct ScenarioStats {
  std::size_t rounds = 0;
  std::size_t infeasible_draws = 0;  // discarded by resampling
  std::size_t infeasible_rounds = 0;  // emitted with threshold > total value
  std::size_t wraparounds = 0;        // data replayed from the start
};

/// A stream of rounds for a fixed population.
class Scenario {
 public:
  virtual ~Scenario() = default;

  virtual RoundInput next_round() = 0;
  virtual std::size_t population() const = 0;
  virtual Support value_support() const = 0;
  virtual Support cost_support() const = 0;
  /// Expected contributor cost, used to seed aspiration levels.
  virtual double mean_cost() const = 0;

  const ScenarioStats& stats() const { return stats_; }

 protected:
  void record(const RoundInput& round);
  ScenarioStats stats_;
};

std::unique_ptr<Scenario> make_synthetic_scenario(const SyntheticConfig& cfg);

/// Smart-grid rounds. With `records` empty, a synthetic daily production and
/// load profile for `households` homes stands in for measured data.
std::unique_ptr<Scenario> make_grid_scenario(const GridConfig& cfg, std::vector<GridRecord> records,
                                             std::size_t households, std::uint64_t seed);

/// Sensing rounds. With `records` empty, synthetic trips for `vehicles`
/// cars are generated. Vehicles absent at a timestep report nothing (value
/// and cost 0).
std::unique_ptr<Scenario> make_sensing_scenario(const SensingConfig& cfg,
                                                std::vector<TraceRecord> records,
                                                std::size_t vehicles, std::uint64_t seed);

}  // namespace vcg
