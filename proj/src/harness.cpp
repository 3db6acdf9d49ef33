#include "vcg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "vcg/csv.hpp"
#include "vcg/errors.hpp"
#include "vcg/game.hpp"
#include "vcg/rng.hpp"
#include "vcg/strategies.hpp"

namespace vcg {

namespace {

constexpr std::uint64_t kScenarioStream = 1;
constexpr std::uint64_t kStrategyStream = 2;

// Measured data, read once per sweep.
struct ScenarioData {
  std::vector<GridRecord> grid;
  std::vector<TraceRecord> trace;
};

ScenarioData load_data(const ExperimentConfig& cfg) {
  ScenarioData data;
  if (cfg.scenario == ScenarioKind::Grid && !cfg.grid_data.empty()) {
    data.grid = ingest_grid_csv(cfg.grid_data);
    if (data.grid.empty()) throw ConfigError(cfg.grid_data.string() + ": no grid records");
  }
  if (cfg.scenario == ScenarioKind::Sensing && !cfg.trace_data.empty()) {
    data.trace = ingest_trace_csv(cfg.trace_data);
    if (data.trace.empty()) throw ConfigError(cfg.trace_data.string() + ": no trace records");
  }
  return data;
}

bool data_backed(const ScenarioData& data) { return !data.grid.empty() || !data.trace.empty(); }

std::unique_ptr<Scenario> build_scenario(const ExperimentConfig& cfg, const ScenarioData& data,
                                         std::size_t population, std::uint64_t seed) {
  std::unique_ptr<Scenario> s;
  switch (cfg.scenario) {
    case ScenarioKind::Synthetic: {
      SyntheticConfig sc = cfg.synthetic;
      sc.n = population;
      sc.seed = seed;
      s = make_synthetic_scenario(sc);
      break;
    }
    case ScenarioKind::Grid:
      s = make_grid_scenario(cfg.grid, data.grid, population, seed);
      break;
    case ScenarioKind::Sensing:
      s = make_sensing_scenario(cfg.sensing, data.trace, population, seed);
      break;
  }
  if (s->population() != population) {
    throw ConfigError("scenario data has " + std::to_string(s->population()) +
                      " agents but population " + std::to_string(population) + " was requested");
  }
  return s;
}

RunTrace simulate(const ExperimentConfig& cfg, const ScenarioData& data, std::size_t population,
                  std::size_t repetition) {
  RunTrace trace;
  trace.population = population;
  trace.repetition = repetition;
  trace.seed = run_seed(cfg.seed, population, repetition);

  std::unique_ptr<Scenario> scenario =
      build_scenario(cfg, data, population, derive_seed(trace.seed, {kScenarioStream}));

  PopulationContext ctx;
  ctx.agents = population;
  ctx.total_steps = cfg.steps;
  ctx.seed = derive_seed(trace.seed, {kStrategyStream});
  ctx.payoffs = cfg.payoffs;
  ctx.value_support = scenario->value_support();
  ctx.cost_support = scenario->cost_support();
  ctx.mean_cost = scenario->mean_cost();
  std::unique_ptr<Population> agents = make_population(cfg.strategy, ctx);

  for (auto& s : trace.series) s.reserve(cfg.steps);
  trace.cumulative_quality.reserve(cfg.steps);

  std::vector<Decision> decisions(population);
  std::vector<double> cumulative(population, 0.0);
  double total_quality = 0.0;
  RoundInput current = scenario->next_round();
  for (std::size_t t = 0; t < cfg.steps; ++t) {
    agents->decide(current, decisions);
    const RoundOutcome outcome = evaluate_round(current, decisions, cfg.payoffs);

    for (std::size_t i = 0; i < population; ++i) cumulative[i] += outcome.contributed_values[i];
    total_quality += outcome.quality;
    if (outcome.success) ++trace.successes;

    const double privacy = agents->discloses_all() ? privacy_measure(population, population)
                                                   : privacy_measure(decisions);
    auto put = [&](Measure m, double v) { trace.series[static_cast<std::size_t>(m)].push_back(v); };
    put(Measure::Success, success_measure(outcome.quality, current.threshold));
    put(Measure::Efficiency, efficiency_measure(outcome.quality, current.threshold));
    put(Measure::Welfare, welfare_measure(outcome.utilities));
    put(Measure::Privacy, privacy);
    put(Measure::Fairness, fairness_round(outcome));
    put(Measure::FairnessOverTime, fairness_over_time(cumulative));
    trace.cumulative_quality.push_back(total_quality);

    if (t + 1 < cfg.steps) {
      RoundInput next = scenario->next_round();
      agents->learn(current, decisions, outcome, &next);
      current = std::move(next);
    } else {
      agents->learn(current, decisions, outcome, nullptr);
    }
  }
  trace.scenario_stats = scenario->stats();
  return trace;
}

std::vector<std::size_t> resolve_populations(const ExperimentConfig& cfg,
                                             const ScenarioData& data) {
  if (!data_backed(data)) return cfg.population_sizes;
  const std::size_t n = cfg.scenario == ScenarioKind::Grid
                            ? make_grid_scenario(cfg.grid, data.grid, 0, 0)->population()
                            : make_sensing_scenario(cfg.sensing, data.trace, 0, 0)->population();
  if (cfg.population_sizes != std::vector<std::size_t>{n}) {
    std::clog << "vcg: scenario data fixes the population at " << n
              << "; ignoring the configured population sizes\n";
  }
  return {n};
}

std::string repetition_text(const std::optional<std::size_t>& rep) {
  return rep ? std::to_string(*rep) : std::string("agg");
}

}  // namespace

std::uint64_t run_seed(std::uint64_t base, std::size_t population, std::size_t repetition) {
  return derive_seed(base, {population, repetition});
}

std::unique_ptr<Scenario> make_scenario(const ExperimentConfig& cfg, std::size_t population,
                                        std::uint64_t seed) {
  return build_scenario(cfg, load_data(cfg), population, seed);
}

RunTrace run_simulation(const ExperimentConfig& cfg, std::size_t population,
                        std::size_t repetition) {
  cfg.validate();
  return simulate(cfg, load_data(cfg), population, repetition);
}

std::vector<RunTrace> run_all(const ExperimentConfig& cfg) {
  cfg.validate();
  const ScenarioData data = load_data(cfg);
  const std::vector<std::size_t> sizes = resolve_populations(cfg, data);

  struct Unit {
    std::size_t population;
    std::size_t repetition;
  };
  std::vector<Unit> units;
  for (std::size_t n : sizes) {
    for (std::size_t r = 0; r < cfg.repetitions; ++r) units.push_back({n, r});
  }

  std::vector<RunTrace> out(units.size());
  std::vector<std::exception_ptr> errors(units.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t k = cursor++; k < units.size(); k = cursor++) {
      try {
        out[k] = simulate(cfg, data, units[k].population, units[k].repetition);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };

  std::size_t threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, units.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<ResultRow> result_rows(const ExperimentConfig& cfg, const std::vector<RunTrace>& runs) {
  const std::string scenario(scenario_name(cfg.scenario));
  const std::string strategy(strategy_name(cfg.strategy.kind));
  std::vector<ResultRow> rows;
  bool warned = false;

  for (std::size_t begin = 0; begin < runs.size();) {
    const std::size_t population = runs[begin].population;
    std::size_t end = begin;
    while (end < runs.size() && runs[end].population == population) ++end;

    for (std::size_t k = begin; k < end; ++k) {
      const RunTrace& run = runs[k];
      const std::size_t steps = run.at(Measure::Success).size();
      for (std::size_t t = 0; t < steps; ++t) {
        for (Measure m : kAllMeasures) {
          rows.push_back({scenario, strategy, population, run.repetition, t + 1, m, run.at(m)[t],
                          std::nullopt});
        }
      }
    }

    if (end - begin >= 2) {
      std::array<MeasureSeries, kMeasureCount> agg;
      for (Measure m : kAllMeasures) {
        std::vector<std::vector<double>> per_rep;
        for (std::size_t k = begin; k < end; ++k) per_rep.push_back(runs[k].at(m));
        agg[static_cast<std::size_t>(m)] = aggregate(per_rep);
      }
      const std::size_t steps = agg[0].per_timestep.size();
      for (std::size_t t = 0; t < steps; ++t) {
        for (Measure m : kAllMeasures) {
          const MeasurePoint& p = agg[static_cast<std::size_t>(m)].per_timestep[t];
          rows.push_back({scenario, strategy, population, std::nullopt, t + 1, m, p.mean,
                          p.ci_half_width});
        }
      }
    } else if (!warned) {
      std::clog << "vcg: a single repetition has no confidence interval; "
                   "aggregate rows omitted\n";
      warned = true;
    }
    begin = end;
  }
  return rows;
}

std::vector<ResultRow> sweep(const ExperimentConfig& cfg) { return result_rows(cfg, run_all(cfg)); }

void write_results(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << kResultsHeader << '\n';
  for (const ResultRow& r : rows) {
    out << r.scenario << ',' << r.strategy << ',' << r.population << ','
        << repetition_text(r.repetition) << ',' << r.timestep << ',' << measure_name(r.measure)
        << ',' << csv::format_double(r.value) << ',';
    if (r.ci) out << csv::format_double(*r.ci);
    out << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

std::vector<ResultRow> read_results(const std::filesystem::path& path) {
  const csv::Table table = csv::read(path);
  const std::size_t c_scenario = table.column("scenario");
  const std::size_t c_strategy = table.column("strategy");
  const std::size_t c_population = table.column("population");
  const std::size_t c_repetition = table.column("repetition");
  const std::size_t c_timestep = table.column("timestep");
  const std::size_t c_measure = table.column("measure");
  const std::size_t c_value = table.column("value");
  const std::size_t c_ci = table.column("ci");

  auto count = [](const csv::Row& row, std::size_t col, std::string_view name) {
    const long long v = csv::parse_int(row.fields[col], row.line, name);
    if (v < 0) throw DataError(std::string(name) + " must be non-negative", row.line);
    return static_cast<std::size_t>(v);
  };

  std::vector<ResultRow> rows;
  rows.reserve(table.rows.size());
  for (const csv::Row& row : table.rows) {
    ResultRow r;
    r.scenario = row.fields[c_scenario];
    r.strategy = row.fields[c_strategy];
    r.population = count(row, c_population, "population");
    if (row.fields[c_repetition] != "agg") r.repetition = count(row, c_repetition, "repetition");
    r.timestep = count(row, c_timestep, "timestep");
    try {
      r.measure = parse_measure(row.fields[c_measure]);
    } catch (const ContractError& e) {
      throw DataError(e.what(), row.line);
    }
    r.value = csv::parse_double(row.fields[c_value], row.line, "value");
    if (!row.fields[c_ci].empty()) r.ci = csv::parse_double(row.fields[c_ci], row.line, "ci");
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace vcg
