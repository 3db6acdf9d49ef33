#pragma once

#include <cstddef>
#include <vector>

namespace vcg {

/// Min-cost covering knapsack: pick items whose values reach `threshold`
/// at the lowest total cost.
struct CoverInstance {
  std::vector<double> values;
  std::vector<double> costs;
  double threshold = 0.0;

  std::size_t size() const { return values.size(); }
};

struct CoverSolution {
  std::vector<std::size_t> selected;  // ascending
  double total_cost = 0.0;
  double total_value = 0.0;
  bool feasible = false;
};

/// Largest instance solve_exact accepts.
inline constexpr std::size_t kExactSolverLimit = 25;

/// Exhaustive branch-and-bound. Ties on cost (within 1e-9 relative) go to
/// the smaller set, then to the lexicographically smaller index set.
/// Throws CapacityError above kExactSolverLimit items.
CoverSolution solve_exact(const CoverInstance& instance);

/// Approximation scheme that never under-covers: any feasible result has
/// total_value >= threshold and total_cost <= (1 + epsilon) * optimum.
/// Requires 0 < epsilon <= 1.
CoverSolution solve_fptas(const CoverInstance& instance, double epsilon);

}  // namespace vcg
