#include "vcg/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <set>

#include "vcg/csv.hpp"
#include "vcg/errors.hpp"

namespace vcg {

namespace {

double uniform(Rng& rng, double low, double high) {
  if (low == high) return low;
  return std::uniform_real_distribution<double>(low, high)(rng);
}

double normal(Rng& rng, double mean, double sigma) {
  if (sigma == 0.0) return mean;
  return std::normal_distribution<double>(mean, sigma)(rng);
}

}  // namespace

// ---------------------------------------------------------------- synthetic

void SyntheticConfig::validate() const {
  if (n == 0) throw ContractError("synthetic scenario needs at least one agent");
  if (!(value_low >= 0.0)) throw ContractError("value_low must be >= 0");
  if (!(value_high >= value_low)) throw ContractError("value_high must be >= value_low");
  if (!(cost_sigma >= 0.0)) throw ContractError("cost_sigma must be >= 0");
  if (!(threshold_fraction > 0.0 && threshold_fraction <= 1.0)) {
    throw ContractError("threshold_fraction must lie in (0, 1]");
  }
}

double SyntheticConfig::threshold() const {
  return threshold_fraction * static_cast<double>(n) * 0.5 * (value_low + value_high);
}

RoundInput synthetic_round(const SyntheticConfig& cfg, Rng& rng, std::size_t* redraws) {
  cfg.validate();
  RoundInput round;
  round.threshold = cfg.threshold();
  round.values.resize(cfg.n);
  while (true) {
    for (double& v : round.values) v = uniform(rng, cfg.value_low, cfg.value_high);
    if (!cfg.resample_infeasible || round.total_value() >= round.threshold) break;
    if (redraws) ++*redraws;
  }
  round.costs.resize(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    round.costs[i] = std::max(0.0, normal(rng, round.values[i], cfg.cost_sigma));
  }
  round.privacy_costs = round.costs;
  return round;
}

// --------------------------------------------------------------- smart grid

double surplus(const GridRecord& record) {
  double production = 0.0;
  double baseline = 0.0;
  for (double p : record.production) production += p;
  for (double b : record.baseline) baseline += b;
  return production - baseline;
}

RoundInput grid_round(const GridRecord& record, std::span<const double> ev_need,
                      const GridConfig& cfg, Rng& rng) {
  const std::size_t n = record.size();
  if (record.baseline.size() != n || ev_need.size() != n) {
    throw ContractError("grid round: production, baseline and ev_need lengths differ");
  }
  if (n == 0) throw ContractError("grid round has no households");
  RoundInput round;
  round.values.assign(ev_need.begin(), ev_need.end());
  round.costs.resize(n);
  double demand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(ev_need[i] >= 0.0)) throw ContractError("ev_need entries must be >= 0");
    demand += ev_need[i];
    const double jitter = std::max(0.0, normal(rng, 1.0, cfg.comfort_noise));
    round.costs[i] = cfg.comfort_factor * ev_need[i] * jitter;
  }
  round.privacy_costs = round.costs;
  round.threshold = std::max(0.0, demand - surplus(record));
  return round;
}

// ---------------------------------------------------- participatory sensing

double proximity_cost(double trip_position, double cost_scale) {
  const double pos = std::clamp(trip_position, 0.0, 1.0);
  return cost_scale * (1.0 - 2.0 * std::min(pos, 1.0 - pos));
}

RoundInput sensing_round(std::span<const TraceRecord> current,
                         std::span<const std::optional<double>> previous_speed,
                         const SensingConfig& cfg) {
  const std::size_t n = current.size();
  if (n == 0) throw ContractError("sensing round has no vehicles");
  if (previous_speed.size() != n) {
    throw ContractError("sensing round: previous_speed length differs from records");
  }
  const double scale = cfg.speed_change_scale > 0.0 ? cfg.speed_change_scale : 1.0;
  RoundInput round;
  round.values.resize(n);
  round.costs.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const TraceRecord& r = current[i];
    double change = 0.0;
    if (previous_speed[i]) {
      change = std::abs(r.speed - *previous_speed[i]);
    } else if (cfg.strict) {
      throw DataError("vehicle '" + r.vehicle_id + "' has no previous speed at timestep " +
                      std::to_string(r.timestep));
    }
    round.values[i] = change / scale;
    round.costs[i] = proximity_cost(r.trip_position, cfg.cost_scale);
  }
  round.privacy_costs = round.costs;
  round.threshold = cfg.threshold_fraction * static_cast<double>(n);
  return round;
}

// ------------------------------------------------------------------- CSV io

std::vector<TraceRecord> ingest_trace_csv(const std::filesystem::path& path) {
  const csv::Table table = csv::read(path);
  const std::size_t c_id = table.column("vehicle_id");
  const std::size_t c_t = table.column("timestep");
  const std::size_t c_speed = table.column("speed");
  const std::size_t c_pos = table.column("trip_position");

  std::vector<TraceRecord> out;
  out.reserve(table.rows.size());
  std::map<std::string, std::int64_t> last_seen;
  for (const csv::Row& row : table.rows) {
    TraceRecord r;
    r.vehicle_id = row.fields[c_id];
    if (r.vehicle_id.empty()) throw DataError("empty vehicle_id", row.line);
    r.timestep = csv::parse_int(row.fields[c_t], row.line, "timestep");
    r.speed = csv::parse_double(row.fields[c_speed], row.line, "speed");
    r.trip_position = csv::parse_double(row.fields[c_pos], row.line, "trip_position");
    if (!(r.speed >= 0.0) || !std::isfinite(r.speed)) {
      throw DataError("speed must be a finite non-negative number", row.line);
    }
    if (!(r.trip_position >= 0.0 && r.trip_position <= 1.0)) {
      throw DataError("trip_position must lie in [0, 1]", row.line);
    }
    auto [it, fresh] = last_seen.try_emplace(r.vehicle_id, r.timestep);
    if (!fresh) {
      if (r.timestep <= it->second) {
        throw DataError("timestep " + std::to_string(r.timestep) + " for vehicle '" +
                            r.vehicle_id + "' does not increase",
                        row.line);
      }
      it->second = r.timestep;
    }
    out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(), [](const TraceRecord& a, const TraceRecord& b) {
    if (a.timestep != b.timestep) return a.timestep < b.timestep;
    return a.vehicle_id < b.vehicle_id;
  });
  return out;
}

void write_trace_csv(const std::filesystem::path& path, std::span<const TraceRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << "vehicle_id,timestep,speed,trip_position\n";
  for (const TraceRecord& r : records) {
    out << r.vehicle_id << ',' << r.timestep << ',' << csv::format_double(r.speed) << ','
        << csv::format_double(r.trip_position) << '\n';
  }
  if (!out) throw DataError("write to '" + path.string() + "' failed");
}

std::vector<GridRecord> ingest_grid_csv(const std::filesystem::path& path) {
  const csv::Table table = csv::read(path);
  const std::size_t c_t = table.column("timestep");
  const std::size_t c_id = table.column("household_id");
  const std::size_t c_prod = table.column("production");
  const std::size_t c_base = table.column("baseline");

  struct Cell {
    double production;
    double baseline;
  };
  std::map<std::int64_t, std::map<std::string, Cell>> by_time;
  std::map<std::int64_t, std::size_t> first_line;
  std::int64_t previous = 0;
  bool any = false;
  for (const csv::Row& row : table.rows) {
    const std::int64_t t = csv::parse_int(row.fields[c_t], row.line, "timestep");
    const std::string& id = row.fields[c_id];
    if (id.empty()) throw DataError("empty household_id", row.line);
    const double prod = csv::parse_double(row.fields[c_prod], row.line, "production");
    const double base = csv::parse_double(row.fields[c_base], row.line, "baseline");
    if (!(prod >= 0.0) || !(base >= 0.0) || !std::isfinite(prod) || !std::isfinite(base)) {
      throw DataError("production and baseline must be finite and non-negative", row.line);
    }
    if (any && t < previous) {
      throw DataError("timestep " + std::to_string(t) + " goes backwards", row.line);
    }
    previous = t;
    any = true;
    first_line.try_emplace(t, row.line);
    if (!by_time[t].emplace(id, Cell{prod, base}).second) {
      throw DataError("duplicate household '" + id + "' at timestep " + std::to_string(t),
                      row.line);
    }
  }

  std::vector<GridRecord> out;
  std::set<std::string> households;
  for (const auto& [t, cells] : by_time) {
    GridRecord rec;
    rec.timestep = t;
    for (const auto& [id, cell] : cells) {
      rec.household_ids.push_back(id);
      rec.production.push_back(cell.production);
      rec.baseline.push_back(cell.baseline);
    }
    if (out.empty()) {
      households.insert(rec.household_ids.begin(), rec.household_ids.end());
    } else if (rec.household_ids != out.front().household_ids) {
      throw DataError("timestep " + std::to_string(t) + " lists a different household set",
                      first_line[t]);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

void write_grid_csv(const std::filesystem::path& path, std::span<const GridRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << "timestep,household_id,production,baseline\n";
  for (const GridRecord& rec : records) {
    for (std::size_t i = 0; i < rec.size(); ++i) {
      out << rec.timestep << ',' << rec.household_ids[i] << ','
          << csv::format_double(rec.production[i]) << ',' << csv::format_double(rec.baseline[i])
          << '\n';
    }
  }
  if (!out) throw DataError("write to '" + path.string() + "' failed");
}

// -------------------------------------------------------- round generators

void Scenario::record(const RoundInput& round) {
  ++stats_.rounds;
  if (round.total_value() < round.threshold) ++stats_.infeasible_rounds;
}

namespace {

class SyntheticScenario final : public Scenario {
 public:
  explicit SyntheticScenario(const SyntheticConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    cfg_.validate();
  }

  RoundInput next_round() override {
    RoundInput r = synthetic_round(cfg_, rng_, &stats_.infeasible_draws);
    record(r);
    return r;
  }
  std::size_t population() const override { return cfg_.n; }
  Support value_support() const override { return {cfg_.value_low, cfg_.value_high}; }
  Support cost_support() const override {
    return {0.0, cfg_.value_high + 3.0 * cfg_.cost_sigma};
  }
  double mean_cost() const override { return 0.5 * (cfg_.value_low + cfg_.value_high); }

 private:
  SyntheticConfig cfg_;
  Rng rng_;
};

class GridScenario final : public Scenario {
 public:
  GridScenario(const GridConfig& cfg, std::vector<GridRecord> records, std::size_t households,
               std::uint64_t seed)
      : cfg_(cfg), records_(std::move(records)), rng_(seed) {
    if (!(cfg_.need_low >= 0.0 && cfg_.need_high >= cfg_.need_low)) {
      throw ContractError("grid scenario: need support must satisfy 0 <= low <= high");
    }
    if (!records_.empty()) {
      households_ = records_.front().size();
    } else {
      if (households == 0) throw ContractError("grid scenario needs at least one household");
      households_ = households;
    }
  }

  RoundInput next_round() override {
    GridRecord rec = records_.empty() ? synthetic_record() : replay_record();
    std::vector<double> need(households_);
    for (double& v : need) v = uniform(rng_, cfg_.need_low, cfg_.need_high);
    RoundInput r = grid_round(rec, need, cfg_, rng_);
    record(r);
    ++t_;
    return r;
  }
  std::size_t population() const override { return households_; }
  Support value_support() const override { return {cfg_.need_low, cfg_.need_high}; }
  Support cost_support() const override {
    return {0.0, cfg_.comfort_factor * cfg_.need_high * (1.0 + 3.0 * cfg_.comfort_noise)};
  }
  double mean_cost() const override {
    return cfg_.comfort_factor * 0.5 * (cfg_.need_low + cfg_.need_high);
  }

 private:
  GridRecord replay_record() {
    if (cursor_ == records_.size()) {
      cursor_ = 0;
      ++stats_.wraparounds;
      std::clog << "vcg: grid data exhausted after " << records_.size()
                << " timesteps, replaying from the start\n";
    }
    return records_[cursor_++];
  }

  // Daily solar-like production around 1.2x the mean charge request and a
  // flat baseline around 1x, so the surplus covers most but not all demand.
  GridRecord synthetic_record() {
    const double mean_need = 0.5 * (cfg_.need_low + cfg_.need_high);
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(t_ % 24) / 24.0;
    GridRecord rec;
    rec.timestep = static_cast<std::int64_t>(t_);
    for (std::size_t i = 0; i < households_; ++i) {
      rec.household_ids.push_back("h" + std::to_string(i));
      rec.production.push_back(
          std::max(0.0, mean_need * (1.2 + 0.15 * std::sin(phase)) + normal(rng_, 0.0, 0.1)));
      rec.baseline.push_back(std::max(0.0, mean_need + normal(rng_, 0.0, 0.1)));
    }
    return rec;
  }

  GridConfig cfg_;
  std::vector<GridRecord> records_;
  std::size_t households_ = 0;
  std::size_t cursor_ = 0;
  std::size_t t_ = 0;
  Rng rng_;
};

class SensingScenario final : public Scenario {
 public:
  SensingScenario(const SensingConfig& cfg, std::vector<TraceRecord> records, std::size_t vehicles,
                  std::uint64_t seed)
      : cfg_(cfg), rng_(seed) {
    if (records.empty()) {
      if (vehicles == 0) throw ContractError("sensing scenario needs at least one vehicle");
      trips_.resize(vehicles);
      for (std::size_t i = 0; i < vehicles; ++i) {
        trips_[i].id = "v" + std::to_string(i);
        trips_[i].speed = uniform(rng_, 20.0, 60.0);
        start_trip(trips_[i]);
      }
      if (cfg_.speed_change_scale <= 0.0) {
        cfg_.speed_change_scale = kSpeedJitter * std::sqrt(2.0 / std::numbers::pi);
      }
      previous_.assign(vehicles, std::nullopt);
      return;
    }
    load(std::move(records));
  }

  RoundInput next_round() override {
    std::vector<TraceRecord> current = trips_.empty() ? replay_frame() : synthetic_frame();
    RoundInput r = sensing_round(current, previous_, cfg_);
    for (std::size_t i = 0; i < current.size(); ++i) previous_[i] = current[i].speed;
    record(r);
    return r;
  }
  std::size_t population() const override { return previous_.size(); }
  Support value_support() const override { return {0.0, 3.0}; }
  Support cost_support() const override { return {0.0, cfg_.cost_scale}; }
  double mean_cost() const override { return 0.5 * cfg_.cost_scale; }

 private:
  static constexpr double kSpeedJitter = 5.0;

  struct Trip {
    std::string id;
    double speed = 0.0;
    int step = 0;
    int length = 1;
  };

  void start_trip(Trip& trip) {
    trip.step = 0;
    trip.length = std::uniform_int_distribution<int>(20, 60)(rng_);
  }

  std::vector<TraceRecord> synthetic_frame() {
    std::vector<TraceRecord> frame;
    frame.reserve(trips_.size());
    for (Trip& trip : trips_) {
      if (trip.step > trip.length) start_trip(trip);
      trip.speed = std::clamp(trip.speed + normal(rng_, 0.0, kSpeedJitter), 0.0, 120.0);
      frame.push_back({trip.id, static_cast<std::int64_t>(t_), trip.speed,
                       static_cast<double>(trip.step) / trip.length});
      ++trip.step;
    }
    ++t_;
    return frame;
  }

  void load(std::vector<TraceRecord> records) {
    std::set<std::string> ids;
    for (const TraceRecord& r : records) ids.insert(r.vehicle_id);
    std::vector<std::string> order(ids.begin(), ids.end());
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = i;

    // Estimate the mean speed change when no scale was configured.
    if (cfg_.speed_change_scale <= 0.0) {
      std::map<std::string, double> last;
      double sum = 0.0;
      std::size_t count = 0;
      for (const TraceRecord& r : records) {
        auto it = last.find(r.vehicle_id);
        if (it != last.end()) {
          sum += std::abs(r.speed - it->second);
          ++count;
        }
        last[r.vehicle_id] = r.speed;
      }
      cfg_.speed_change_scale = (count > 0 && sum > 0.0) ? sum / static_cast<double>(count) : 1.0;
    }

    std::int64_t current_t = records.front().timestep;
    std::vector<std::optional<TraceRecord>> frame(order.size());
    auto flush = [&] {
      frames_.push_back(std::move(frame));
      frame.assign(order.size(), std::nullopt);
    };
    for (TraceRecord& r : records) {
      if (r.timestep != current_t) {
        flush();
        current_t = r.timestep;
      }
      frame[index[r.vehicle_id]] = std::move(r);
    }
    flush();
    ids_ = std::move(order);
    previous_.assign(ids_.size(), std::nullopt);
  }

  std::vector<TraceRecord> replay_frame() {
    if (cursor_ == frames_.size()) {
      cursor_ = 0;
      ++stats_.wraparounds;
      std::clog << "vcg: trace data exhausted after " << frames_.size()
                << " timesteps, replaying from the start\n";
    }
    const auto& frame = frames_[cursor_++];
    std::vector<TraceRecord> current(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) {
      if (frame[i]) {
        current[i] = *frame[i];
      } else {
        // Idle vehicle: no change of speed, midpoint position, so value and
        // cost are both zero.
        current[i] = {ids_[i], 0, previous_[i].value_or(0.0), 0.5};
      }
    }
    // An idle vehicle with no history must not trip strict mode.
    for (std::size_t i = 0; i < frame.size(); ++i) {
      if (!frame[i] && !previous_[i]) previous_[i] = current[i].speed;
    }
    return current;
  }

  SensingConfig cfg_;
  Rng rng_;
  std::vector<Trip> trips_;
  std::vector<std::vector<std::optional<TraceRecord>>> frames_;
  std::vector<std::string> ids_;
  std::vector<std::optional<double>> previous_;
  std::size_t cursor_ = 0;
  std::size_t t_ = 0;
};

}  // namespace

std::unique_ptr<Scenario> make_synthetic_scenario(const SyntheticConfig& cfg) {
  return std::make_unique<SyntheticScenario>(cfg);
}

std::unique_ptr<Scenario> make_grid_scenario(const GridConfig& cfg, std::vector<GridRecord> records,
                                             std::size_t households, std::uint64_t seed) {
  return std::make_unique<GridScenario>(cfg, std::move(records), households, seed);
}

std::unique_ptr<Scenario> make_sensing_scenario(const SensingConfig& cfg,
                                                std::vector<TraceRecord> records,
                                                std::size_t vehicles, std::uint64_t seed) {
  return std::make_unique<SensingScenario>(cfg, std::move(records), vehicles, seed);
}

}  // namespace vcg
