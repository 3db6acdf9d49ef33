#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "vcg/errors.hpp"
#include "vcg/metrics.hpp"

using namespace vcg;
using V = std::vector<double>;

TEST_CASE("success measure") {
  CHECK(success_measure(4, 8) == 0.5);
  CHECK(success_measure(10, 8) == 1.0);
  CHECK(success_measure(0, 8) == 0.0);
  CHECK(success_measure(0, 0) == 1.0);
}

TEST_CASE("efficiency measure") {
  CHECK(efficiency_measure(8, 8) == 1.0);
  CHECK(efficiency_measure(10, 8) == doctest::Approx(0.8));
  CHECK(efficiency_measure(6, 8) == 0.0);
  CHECK(efficiency_measure(0, 0) == 1.0);
}

TEST_CASE("welfare measure") {
  CHECK(welfare_measure(V{1, -1, 0}) == 0.0);
  CHECK(welfare_measure(V{0.7, 0.7}) == doctest::Approx(0.7));
  CHECK(welfare_measure(V(4, -5.0)) == -5.0);
}

TEST_CASE("privacy measure") {
  using D = std::vector<Decision>;
  const Decision c = Decision::Contribute, d = Decision::Defect;
  CHECK(privacy_measure(D(10, c)) == 0.0);
  CHECK(privacy_measure(D(10, d)) == 1.0);
  D half(10, d);
  std::fill(half.begin(), half.begin() + 5, c);
  CHECK(privacy_measure(half) == 0.5);
  CHECK(privacy_measure(7, 7) == 0.0);
}

TEST_CASE("gini examples") {
  CHECK(gini(V{1, 1, 1, 1}) == 0.0);
  CHECK(gini(V{0, 0, 0, 1}) == doctest::Approx(0.75));
  CHECK(gini(V{1, 2, 3, 4}) == doctest::Approx(0.25));
  CHECK(gini(V{4, 1, 3, 2}) == doctest::Approx(0.25));
  CHECK(gini(V{0, 0, 0}) == 0.0);
  CHECK_THROWS_AS(gini(V{1, -1}), ContractError);
}

TEST_CASE("gini matches mean absolute difference on random vectors") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(0, 10);
  std::bernoulli_distribution zero(0.2);
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    V y(1 + rng() % 60);
    for (double& x : y) x = zero(rng) ? 0.0 : u(rng);
    if (std::abs(gini(y) - oracle::gini_mad(y)) > 1e-9) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("property: gini range and scale invariance") {
  std::mt19937_64 rng(4321);
  std::exponential_distribution<double> e(1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    V y(n);
    for (double& x : y) x = e(rng);
    const double g = gini(y);
    CHECK(g >= 0.0);
    CHECK(g <= static_cast<double>(n - 1) / static_cast<double>(n) + 1e-12);
    V scaled = y;
    for (double& x : scaled) x *= 3.7;
    CHECK(gini(scaled) == doctest::Approx(g).epsilon(1e-12));
  }
}

TEST_CASE("round fairness over all agents") {
  RoundOutcome o;
  o.contributed_values = {1, 1, 1, 1};
  CHECK(fairness_round(o) == 0.0);
  o.contributed_values = {0, 0, 0, 1};
  CHECK(fairness_round(o) == doctest::Approx(0.75));
  o.contributed_values = {0, 0, 0, 0};
  CHECK(fairness_round(o) == 0.0);
}

TEST_CASE("fairness over time") {
  CHECK(fairness_over_time(V{5, 5, 5}) == 0.0);
  // One agent contributes v = 1 for T rounds, nobody else.
  const std::size_t n = 8, T = 100;
  V cumulative(n, 0.0);
  for (std::size_t t = 0; t < T; ++t) cumulative[0] += 1.0;
  CHECK(fairness_over_time(cumulative) == doctest::Approx(7.0 / 8.0));

  // Equal-probability random contributions flatten out.
  std::mt19937_64 rng(8);
  std::bernoulli_distribution coin(0.5);
  V hist(10, 0.0);
  for (int t = 0; t < 5000; ++t)
    for (double& h : hist) h += coin(rng) ? 1.0 : 0.0;
  CHECK(fairness_over_time(hist) < 0.1);
}

TEST_CASE("t critical values") {
  CHECK(t_critical(0.95, 2) == doctest::Approx(4.302653).epsilon(1e-6));
  CHECK(t_critical(0.95, 9) == doctest::Approx(2.262157).epsilon(1e-6));
}

TEST_CASE("aggregate") {
  const MeasureSeries s = aggregate({{1.0, 5.0}, {2.0, 5.0}, {3.0, 5.0}});
  REQUIRE(s.per_timestep.size() == 2);
  CHECK(s.per_timestep[0].mean == doctest::Approx(2.0));
  CHECK(s.per_timestep[0].ci_half_width == doctest::Approx(4.302653 / std::sqrt(3.0)).epsilon(1e-6));
  CHECK(s.per_timestep[0].ci_half_width == doctest::Approx(2.484).epsilon(1e-3));
  CHECK(s.per_timestep[1].ci_half_width == 0.0);

  CHECK_THROWS_AS(aggregate({{1.0}}), ContractError);
  CHECK_THROWS_AS(aggregate({{1.0}, {1.0, 2.0}}), ContractError);
}

TEST_CASE("property: aggregate against textbook CI, order invariant") {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> nd(0, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t reps = 2 + rng() % 10;
    std::vector<V> data(reps, V(3));
    for (auto& r : data)
      for (double& x : r) x = nd(rng);
    const MeasureSeries a = aggregate(data);
    std::vector<V> shuffled = data;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const MeasureSeries b = aggregate(shuffled);
    for (std::size_t t = 0; t < 3; ++t) {
      V col;
      for (const auto& r : data) col.push_back(r[t]);
      const double sd = oracle::sample_sd(col);
      const double tq = t_critical(0.95, reps - 1);
      CHECK(a.per_timestep[t].ci_half_width ==
            doctest::Approx(tq * sd / std::sqrt(static_cast<double>(reps))));
      CHECK(a.per_timestep[t].mean == doctest::Approx(b.per_timestep[t].mean).epsilon(1e-12));
      CHECK(a.per_timestep[t].ci_half_width >= 0.0);
    }
  }
}

TEST_CASE("measure names round trip") {
  for (Measure m : kAllMeasures) CHECK(parse_measure(measure_name(m)) == m);
  CHECK(measure_name(Measure::FairnessOverTime) == "fairness_over_time");
  CHECK_THROWS_AS(parse_measure("speed"), ContractError);
}
