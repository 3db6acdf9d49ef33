#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "vcg/errors.hpp"
#include "vcg/solver.hpp"

using namespace vcg;
using Idx = std::vector<std::size_t>;

TEST_CASE("exact solver examples") {
  CoverSolution s = solve_exact({{1, 1, 1}, {1, 2, 3}, 2});
  CHECK(s.feasible);
  CHECK(s.selected == Idx{0, 1});
  CHECK(s.total_cost == 3.0);

  s = solve_exact({{2, 1, 1}, {5, 1, 1}, 2});
  CHECK(s.selected == Idx{1, 2});
  CHECK(s.total_cost == 2.0);

  s = solve_exact({{1}, {1}, 2});
  CHECK_FALSE(s.feasible);
  CHECK(s.selected.empty());
}

TEST_CASE("exact solver tie-breaks") {
  // {0} and {1,2} both cost 2: the smaller set wins.
  CHECK(solve_exact({{2, 1, 1}, {2, 1, 1}, 2}).selected == Idx{0});
  // Equal size and cost: lexicographically smaller index set.
  CHECK(solve_exact({{1, 1, 1}, {1, 1, 1}, 2}).selected == Idx{0, 1});
}

TEST_CASE("exact solver capacity") {
  CoverInstance big;
  big.values.assign(kExactSolverLimit + 1, 1.0);
  big.costs.assign(kExactSolverLimit + 1, 1.0);
  big.threshold = 3;
  CHECK_THROWS_AS(solve_exact(big), CapacityError);
}

TEST_CASE("fptas examples") {
  CoverSolution s = solve_fptas({{1, 1, 1}, {1, 2, 3}, 2}, 0.1);
  CHECK(s.total_cost <= 3.3);
  CHECK(s.total_value >= 2.0);

  CHECK_FALSE(solve_fptas({{1, 1}, {1, 1}, 3}, 0.1).feasible);

  s = solve_fptas({{0.5, 0.5, 0.5, 0.5, 0.5}, {0.3, 0.3, 0.3, 0.3, 0.3}, 1.5}, 0.5);
  CHECK(s.selected.size() == 3);
  CHECK(s.total_cost == doctest::Approx(0.9));
}

TEST_CASE("fptas epsilon range") {
  const CoverInstance inst{{1}, {1}, 1};
  CHECK_THROWS_AS(solve_fptas(inst, 0.0), ContractError);
  CHECK_THROWS_AS(solve_fptas(inst, 1.5), ContractError);
  CHECK_NOTHROW(solve_fptas(inst, 1.0));
}

TEST_CASE("zero-cost items come for free") {
  const CoverSolution s = solve_fptas({{1, 1, 1}, {0, 0, 5}, 2}, 0.1);
  CHECK(s.selected == Idx{0, 1});
  CHECK(s.total_cost == 0.0);
}

TEST_CASE("exact solver matches brute force") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0, 2);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    CoverInstance inst;
    for (std::size_t i = 0; i < n; ++i) {
      inst.values.push_back(u(rng));
      inst.costs.push_back(u(rng));
    }
    inst.threshold = u(rng) * static_cast<double>(n) * 0.7;
    const oracle::Cover ref = oracle::brute_force_cover(inst.values, inst.costs, inst.threshold);
    const CoverSolution s = solve_exact(inst);
    REQUIRE(s.feasible == ref.feasible);
    if (ref.feasible) CHECK(s.total_cost == doctest::Approx(ref.cost).epsilon(1e-9));
  }
}

TEST_CASE("property: solution bookkeeping and monotone optimum") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1.5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 14;
    CoverInstance inst;
    for (std::size_t i = 0; i < n; ++i) {
      inst.values.push_back(u(rng));
      inst.costs.push_back(u(rng));
    }
    inst.threshold = 0.01 + u(rng) * static_cast<double>(n) * 0.5;
    for (double eps : {0.05, 0.1, 0.5, 1.0}) {
      const CoverSolution s = solve_fptas(inst, eps);
      double v = 0.0, c = 0.0;
      for (std::size_t i : s.selected) {
        v += inst.values[i];
        c += inst.costs[i];
      }
      CHECK(std::is_sorted(s.selected.begin(), s.selected.end()));
      CHECK(s.total_value == doctest::Approx(v));
      CHECK(s.total_cost == doctest::Approx(c));
      if (s.feasible) CHECK(s.total_value >= inst.threshold);
    }
    CoverInstance lower = inst;
    lower.threshold *= 0.7;
    const CoverSolution hi = solve_exact(inst), lo = solve_exact(lower);
    if (hi.feasible) CHECK(lo.total_cost <= hi.total_cost + 1e-12);
  }
}

TEST_CASE("fptas within 1+eps of the optimum on larger instances") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    CoverInstance inst;
    for (int i = 0; i < 22; ++i) {
      const double v = u(rng);
      inst.values.push_back(v);
      inst.costs.push_back(std::max(0.0, std::normal_distribution<double>(v, 0.2)(rng)));
    }
    inst.threshold = 0.8 * 22;
    const CoverSolution exact = solve_exact(inst);
    const CoverSolution approx = solve_fptas(inst, 0.1);
    REQUIRE(exact.feasible == approx.feasible);
    if (exact.feasible) CHECK(approx.total_cost <= 1.1 * exact.total_cost + 1e-12);
  }
}
