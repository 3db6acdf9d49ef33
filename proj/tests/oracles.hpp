// Independent reference implementations used only by tests. They follow
// textbook definitions and share no code with the library.
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

// Gini as mean absolute difference: sum_ij |y_i - y_j| / (2 n^2 mean).
inline double gini_mad(const std::vector<double>& y) {
  const double n = static_cast<double>(y.size());
  double sum = 0.0;
  for (double v : y) sum += v;
  if (sum == 0.0) return 0.0;
  double diff = 0.0;
  for (double a : y)
    for (double b : y) diff += std::fabs(a - b);
  return diff / (2.0 * n * n * (sum / n));
}

// Utility of agent i from the table over q_{-i}: columns are
// "certain failure", "pivotal" and "certain success".
enum class Column { Failure, Pivotal, Success };

inline Column column_of(double q_others, double v, double tau) {
  if (q_others + v < tau) return Column::Failure;
  if (q_others < tau) return Column::Pivotal;
  return Column::Success;
}

inline double table_cell(Column col, bool contribute, double G, double B, double c) {
  if (contribute) return col == Column::Failure ? -B - c : G - c;
  return col == Column::Success ? G : -B;
}

struct Cover {
  bool feasible = false;
  double cost = std::numeric_limits<double>::infinity();
  std::uint32_t mask = 0;
};

// Enumerates all 2^n subsets.
inline Cover brute_force_cover(const std::vector<double>& values, const std::vector<double>& costs,
                               double tau) {
  Cover best;
  const std::size_t n = values.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double v = 0.0, c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        v += values[i];
        c += costs[i];
      }
    }
    if (v >= tau && c < best.cost) {
      best = {true, c, mask};
    }
  }
  return best;
}

// Sample standard deviation (n - 1 denominator).
inline double sample_sd(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m += v;
  m /= static_cast<double>(x.size());
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(x.size() - 1));
}

}  // namespace oracle
