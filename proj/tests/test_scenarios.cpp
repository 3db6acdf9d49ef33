#include <doctest.h>

#include <cmath>

#include "temp_dir.hpp"
#include "vcg/errors.hpp"
#include "vcg/scenarios.hpp"

using namespace vcg;

TEST_CASE("synthetic round shapes") {
  SyntheticConfig cfg;
  cfg.cost_sigma = 0.0;
  Rng rng(1);
  const RoundInput r = synthetic_round(cfg, rng);
  CHECK(r.size() == 10);
  CHECK(r.costs == r.values);
  CHECK(r.privacy_costs == r.costs);
  CHECK(r.threshold == doctest::Approx(8.0));

  SyntheticConfig unit;
  unit.value_low = unit.value_high = 1.0;
  const RoundInput u = synthetic_round(unit, rng);
  for (double v : u.values) CHECK(v == 1.0);
  CHECK(u.threshold == doctest::Approx(8.0));
}

TEST_CASE("synthetic streams are seeded") {
  SyntheticConfig cfg;
  cfg.seed = 5;
  auto a = make_synthetic_scenario(cfg);
  auto b = make_synthetic_scenario(cfg);
  for (int t = 0; t < 50; ++t) {
    const RoundInput x = a->next_round(), y = b->next_round();
    CHECK(x.values == y.values);
    CHECK(x.costs == y.costs);
  }
}

TEST_CASE("synthetic feasibility with and without resampling") {
  for (bool resample : {false, true}) {
    SyntheticConfig cfg;
    cfg.resample_infeasible = resample;
    cfg.seed = 3;
    auto s = make_synthetic_scenario(cfg);
    std::size_t infeasible = 0;
    for (int t = 0; t < 5000; ++t) {
      const RoundInput r = s->next_round();
      r.validate();
      if (r.total_value() < r.threshold) ++infeasible;
    }
    CHECK(s->stats().infeasible_rounds == infeasible);
    CHECK(s->stats().rounds == 5000);
    if (resample) {
      CHECK(infeasible == 0);
      CHECK(s->stats().infeasible_draws > 0);
    } else {
      // Roughly 1.5% of raw draws fall short at n = 10; they are reported.
      CHECK(infeasible > 0);
      CHECK(infeasible <= 150);
    }
  }
}

TEST_CASE("synthetic config validation") {
  SyntheticConfig cfg;
  cfg.value_high = 0.1;
  CHECK_THROWS_AS(cfg.validate(), ContractError);
  cfg = {};
  cfg.threshold_fraction = 0;
  CHECK_THROWS_AS(cfg.validate(), ContractError);
}

TEST_CASE("grid surplus and threshold") {
  GridRecord rec{0, {"a"}, {5}, {3}};
  CHECK(surplus(rec) == 2.0);

  GridRecord two{0, {"a", "b"}, {4, 4}, {1, 1}};  // surplus 6
  GridConfig cfg;
  cfg.comfort_noise = 0.0;
  Rng rng(0);
  const std::vector<double> need{6, 4};
  RoundInput r = grid_round(two, need, cfg, rng);
  CHECK(r.threshold == doctest::Approx(4.0));
  CHECK(r.values == need);
  CHECK(r.costs == std::vector<double>{6, 4});

  const std::vector<double> small{1, 2};
  r = grid_round(two, small, cfg, rng);
  CHECK(r.threshold == 0.0);

  const std::vector<double> wrong{1};
  CHECK_THROWS_AS(grid_round(two, wrong, cfg, rng), ContractError);
}

TEST_CASE("property: renouncing tau keeps consumption within the surplus") {
  Rng rng(4);
  GridConfig cfg;
  std::uniform_real_distribution<double> u(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    GridRecord rec;
    std::vector<double> need(n);
    for (std::size_t i = 0; i < n; ++i) {
      rec.household_ids.push_back("h" + std::to_string(i));
      rec.production.push_back(u(rng));
      rec.baseline.push_back(u(rng));
      need[i] = u(rng);
    }
    const RoundInput r = grid_round(rec, need, cfg, rng);
    r.validate();
    double demand = 0.0;
    for (double x : need) demand += x;
    CHECK(demand - r.threshold <= std::max(0.0, surplus(rec)) + 1e-9);
  }
}

TEST_CASE("sensing values and costs") {
  CHECK(proximity_cost(0.5, 1.0) == 0.0);
  CHECK(proximity_cost(0.0, 2.0) == 2.0);
  CHECK(proximity_cost(1.0, 1.0) == 1.0);

  SensingConfig cfg;
  cfg.speed_change_scale = 1.0;
  const std::vector<TraceRecord> now{{"a", 1, 25.0, 0.5}, {"b", 1, 10.0, 0.0}};
  const std::vector<std::optional<double>> prev{30.0, std::nullopt};
  const RoundInput r = sensing_round(now, prev, cfg);
  CHECK(r.values == std::vector<double>{5.0, 0.0});
  CHECK(r.costs == std::vector<double>{0.0, 1.0});
  CHECK(r.threshold == doctest::Approx(1.6));

  cfg.strict = true;
  CHECK_THROWS_AS(sensing_round(now, prev, cfg), DataError);
}

TEST_CASE("trace csv round trip and errors") {
  TempDir dir;
  const std::vector<TraceRecord> recs{
      {"a", 0, 30.0, 0.0}, {"b", 0, 12.5, 0.1}, {"a", 1, 25.0, 0.5}, {"b", 1, 13.0, 0.3}};
  write_trace_csv(dir / "t.csv", recs);
  CHECK(ingest_trace_csv(dir / "t.csv") == recs);

  CHECK(ingest_trace_csv(dir.write("empty.csv", "vehicle_id,timestep,speed,trip_position\n"))
            .empty());

  auto line_of = [](const std::filesystem::path& p) -> std::size_t {
    try {
      ingest_trace_csv(p);
    } catch (const DataError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of(dir.write("neg.csv",
                          "vehicle_id,timestep,speed,trip_position\na,0,1,0\na,1,-3,0.5\n")) == 3);
  CHECK(line_of(dir.write("order.csv",
                          "vehicle_id,timestep,speed,trip_position\na,2,1,0\na,1,3,0.5\n")) == 3);
  CHECK(line_of(dir.write("nan.csv", "vehicle_id,timestep,speed,trip_position\na,0,fast,0\n")) ==
        2);
  CHECK(line_of(dir.write("pos.csv", "vehicle_id,timestep,speed,trip_position\na,0,1,1.5\n")) ==
        2);
  CHECK_THROWS_AS(ingest_trace_csv(dir.write("cols.csv", "vehicle_id,timestep,speed\na,0,1\n")),
                  DataError);
}

TEST_CASE("grid csv round trip and errors") {
  TempDir dir;
  const std::vector<GridRecord> recs{{0, {"h1", "h2"}, {1.5, 2.0}, {1.0, 0.5}},
                                     {1, {"h1", "h2"}, {0.0, 0.25}, {1.0, 1.0}}};
  write_grid_csv(dir / "g.csv", recs);
  CHECK(ingest_grid_csv(dir / "g.csv") == recs);

  const std::string header = "timestep,household_id,production,baseline\n";
  CHECK_THROWS_AS(ingest_grid_csv(dir.write("back.csv", header + "1,h1,1,1\n0,h1,1,1\n")),
                  DataError);
  CHECK_THROWS_AS(ingest_grid_csv(dir.write("dup.csv", header + "0,h1,1,1\n0,h1,1,1\n")),
                  DataError);
  CHECK_THROWS_AS(ingest_grid_csv(dir.write("set.csv", header + "0,h1,1,1\n1,h2,1,1\n")),
                  DataError);
  CHECK_THROWS_AS(ingest_grid_csv(dir.write("neg.csv", header + "0,h1,-1,1\n")), DataError);
}

TEST_CASE("grid scenario replays data and wraps around") {
  const std::vector<GridRecord> recs{{0, {"h1", "h2"}, {3, 3}, {1, 1}},
                                     {1, {"h1", "h2"}, {1, 1}, {1, 1}}};
  auto s = make_grid_scenario({}, recs, 0, 9);
  CHECK(s->population() == 2);
  for (int t = 0; t < 5; ++t) s->next_round().validate();
  CHECK(s->stats().wraparounds == 2);
}

TEST_CASE("synthetic grid and sensing generators are seeded and valid") {
  auto g1 = make_grid_scenario({}, {}, 12, 4), g2 = make_grid_scenario({}, {}, 12, 4);
  auto s1 = make_sensing_scenario({}, {}, 12, 4), s2 = make_sensing_scenario({}, {}, 12, 4);
  double value_sum = 0.0;
  for (int t = 0; t < 500; ++t) {
    const RoundInput a = g1->next_round(), b = g2->next_round();
    a.validate();
    CHECK(a.values == b.values);
    CHECK(a.threshold == b.threshold);
    const RoundInput c = s1->next_round(), d = s2->next_round();
    c.validate();
    CHECK(c.values == d.values);
    for (double v : c.values) value_sum += v;
  }
  // Speed changes are normalised to a mean of about one.
  CHECK(value_sum / (500.0 * 12.0) == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("sensing scenario from a trace with idle vehicles") {
  const std::vector<TraceRecord> recs{
      {"a", 0, 30, 0.0}, {"b", 0, 40, 0.0}, {"a", 1, 25, 0.5}, {"a", 2, 20, 1.0}, {"b", 2, 44, 0.5}};
  SensingConfig cfg;
  cfg.speed_change_scale = 1.0;
  auto s = make_sensing_scenario(cfg, recs, 0, 0);
  CHECK(s->population() == 2);
  const RoundInput r0 = s->next_round();
  CHECK(r0.values == std::vector<double>{0.0, 0.0});
  const RoundInput r1 = s->next_round();
  CHECK(r1.values == std::vector<double>{5.0, 0.0});
  CHECK(r1.costs[1] == 0.0);
  const RoundInput r2 = s->next_round();
  CHECK(r2.values == std::vector<double>{5.0, 4.0});
}
