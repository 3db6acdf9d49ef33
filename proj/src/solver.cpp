#include "vcg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "vcg/errors.hpp"

namespace vcg {

namespace {

void validate(const CoverInstance& in) {
  if (in.values.size() != in.costs.size()) {
    throw ContractError("cover instance: values and costs differ in length");
  }
  if (in.values.empty()) throw ContractError("cover instance has no items");
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (!(in.values[i] >= 0.0) || !(in.costs[i] >= 0.0)) {
      throw ContractError("cover instance: negative entry at item " + std::to_string(i));
    }
  }
  if (!std::isfinite(in.threshold)) throw ContractError("cover instance: threshold not finite");
}

// Sums in ascending index order so every routine agrees bit-for-bit on
// whether a set covers the threshold.
double sum_over(const std::vector<double>& xs, const std::vector<std::size_t>& idx) {
  double s = 0.0;
  for (std::size_t i : idx) s += xs[i];
  return s;
}

CoverSolution finish(const CoverInstance& in, std::vector<std::size_t> selected) {
  std::sort(selected.begin(), selected.end());
  CoverSolution sol;
  sol.total_value = sum_over(in.values, selected);
  sol.total_cost = sum_over(in.costs, selected);
  sol.selected = std::move(selected);
  sol.feasible = sol.total_value >= in.threshold;
  return sol;
}

bool cost_equal(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

struct ExactSearch {
  const CoverInstance& in;
  std::vector<double> suffix_value;  // value of items i..n-1
  std::vector<std::size_t> current;
  std::vector<std::size_t> best;
  double best_cost = std::numeric_limits<double>::infinity();
  bool found = false;

  bool better(double cost) const {
    if (!found) return true;
    if (cost_equal(cost, best_cost)) {
      if (current.size() != best.size()) return current.size() < best.size();
      return current < best;
    }
    return cost < best_cost;
  }

  void visit(std::size_t i, double value, double cost) {
    if (found && cost > best_cost && !cost_equal(cost, best_cost)) return;
    if (value >= in.threshold) {
      // Adding more items cannot lower the cost; items with zero cost would
      // only lengthen the set, which loses the tie-break.
      if (better(cost)) {
        best = current;
        best_cost = cost;
        found = true;
      }
      return;
    }
    if (i == in.size() || value + suffix_value[i] < in.threshold) return;
    current.push_back(i);
    visit(i + 1, value + in.values[i], cost + in.costs[i]);
    current.pop_back();
    visit(i + 1, value, cost);
  }
};

// 2-approximation used to scale costs. For each item e taken as the most
// expensive member, cover the remainder greedily by cost/value ratio using
// only items no dearer than e; the greedy prefix overshoots the fractional
// optimum by at most one item of cost <= c_e.
double two_approx_upper_bound(const CoverInstance& in) {
  const std::size_t n = in.size();
  std::vector<std::size_t> by_ratio(n);
  std::iota(by_ratio.begin(), by_ratio.end(), 0);
  auto ratio_less = [&](std::size_t a, std::size_t b) {
    // c_a / v_a < c_b / v_b without dividing; zero-value items sort last.
    const double lhs = in.costs[a] * in.values[b];
    const double rhs = in.costs[b] * in.values[a];
    if (in.values[a] == 0.0 || in.values[b] == 0.0) return in.values[a] > in.values[b];
    if (lhs != rhs) return lhs < rhs;
    return a < b;
  };
  std::sort(by_ratio.begin(), by_ratio.end(), ratio_less);

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < n; ++e) {
    double value = in.values[e];
    double cost = in.costs[e];
    for (std::size_t k = 0; k < n && value < in.threshold; ++k) {
      const std::size_t j = by_ratio[k];
      if (j == e || in.costs[j] > in.costs[e] || in.values[j] == 0.0) continue;
      value += in.values[j];
      cost += in.costs[j];
    }
    if (value >= in.threshold) best = std::min(best, cost);
  }
  return best;
}

// Drops redundant members, dearest first, while coverage holds.
void prune(const CoverInstance& in, std::vector<std::size_t>& selected) {
  std::vector<std::size_t> order = selected;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return in.costs[a] > in.costs[b]; });
  for (std::size_t item : order) {
    if (in.costs[item] == 0.0) break;
    std::vector<std::size_t> trial;
    trial.reserve(selected.size());
    for (std::size_t s : selected) {
      if (s != item) trial.push_back(s);
    }
    if (sum_over(in.values, trial) >= in.threshold) selected = std::move(trial);
  }
}

}  // namespace

CoverSolution solve_exact(const CoverInstance& instance) {
  validate(instance);
  const std::size_t n = instance.size();
  if (n > kExactSolverLimit) {
    throw CapacityError("solve_exact supports at most " + std::to_string(kExactSolverLimit) +
                        " items, got " + std::to_string(n));
  }
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  if (sum_over(instance.values, all) < instance.threshold) return CoverSolution{};

  ExactSearch search{instance, std::vector<double>(n + 1, 0.0), {}, {}};
  for (std::size_t i = n; i-- > 0;) {
    search.suffix_value[i] = search.suffix_value[i + 1] + instance.values[i];
  }
  search.visit(0, 0.0, 0.0);
  return finish(instance, search.best);
}

CoverSolution solve_fptas(const CoverInstance& instance, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw ContractError("epsilon must lie in (0, 1], got " + std::to_string(epsilon));
  }
  validate(instance);
  const std::size_t n = instance.size();
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  if (sum_over(instance.values, all) < instance.threshold) return CoverSolution{};

  // Free items are always taken.
  std::vector<std::size_t> free_items;
  for (std::size_t i = 0; i < n; ++i) {
    if (instance.costs[i] == 0.0) free_items.push_back(i);
  }
  if (sum_over(instance.values, free_items) >= instance.threshold) {
    return finish(instance, free_items);
  }

  const double upper = two_approx_upper_bound(instance);
  // OPT >= upper / 2, so rounding each cost down to a multiple of `unit`
  // loses at most n * unit = epsilon * upper / 2 <= epsilon * OPT.
  const double unit = epsilon * upper / (2.0 * static_cast<double>(n));
  std::vector<std::size_t> scaled(n);
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = static_cast<std::size_t>(std::floor(instance.costs[i] / unit));
  }
  // One spare level per item absorbs rounding in upper / unit, which can land
  // just below the scaled cost of the bound's own set.
  const std::size_t levels = static_cast<std::size_t>(std::floor(upper / unit)) + n + 1;

  // best[j]: largest value reachable with scaled cost exactly j. Values are
  // kept exact, so the threshold test below is never approximate.
  constexpr double kUnreachable = -1.0;
  std::vector<double> best(levels, kUnreachable);
  best[0] = 0.0;
  std::vector<std::vector<bool>> take(n, std::vector<bool>(levels, false));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t w = scaled[i];
    if (w >= levels) continue;
    const double v = instance.values[i];
    if (w == 0) {
      for (std::size_t j = 0; j < levels; ++j) {
        if (best[j] != kUnreachable) {
          best[j] += v;
          take[i][j] = true;
        }
      }
      continue;
    }
    for (std::size_t j = levels; j-- > w;) {
      if (best[j - w] == kUnreachable) continue;
      const double cand = best[j - w] + v;
      if (cand > best[j]) {
        best[j] = cand;
        take[i][j] = true;
      }
    }
  }

  std::size_t level = levels;
  for (std::size_t j = 0; j < levels; ++j) {
    if (best[j] >= instance.threshold) {
      level = j;
      break;
    }
  }
  if (level == levels) {
    // Unreachable in exact arithmetic; the 2-approximation set is within range.
    throw std::logic_error("solve_fptas: no covering level below the upper bound");
  }

  std::vector<std::size_t> selected;
  for (std::size_t i = n; i-- > 0;) {
    if (take[i][level]) {
      selected.push_back(i);
      level -= scaled[i];
    }
  }
  std::sort(selected.begin(), selected.end());
  prune(instance, selected);
  return finish(instance, std::move(selected));
}

}  // namespace vcg
