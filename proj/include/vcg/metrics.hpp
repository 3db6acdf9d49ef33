#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vcg/game.hpp"

namespace vcg {

enum class Measure { Success, Efficiency, Welfare, Privacy, Fairness, FairnessOverTime };

inline constexpr Measure kAllMeasures[] = {Measure::Success,  Measure::Efficiency,
                                           Measure::Welfare,  Measure::Privacy,
                                           Measure::Fairness, Measure::FairnessOverTime};
inline constexpr std::size_t kMeasureCount = 6;

std::string_view measure_name(Measure m);
/// Inverse of measure_name; throws ContractError for unknown names.
Measure parse_measure(std::string_view name);

/// Fraction of the threshold covered, capped at 1. A zero threshold counts
/// as fully covered.
double success_measure(double quality, double threshold);

/// threshold / quality when the threshold is met, else 0. A met zero
/// threshold with zero quality is exact coverage (1).
double efficiency_measure(double quality, double threshold);

double welfare_measure(std::span<const double> utilities);

/// Fraction of agents that kept their data: 1 - contributors / n.
double privacy_measure(std::span<const Decision> decisions);
double privacy_measure(std::size_t disclosed, std::size_t population);

/// Gini coefficient of non-negative values: 0 is total equality, the
/// maximum is (n-1)/n. All-zero input is defined as 0.
double gini(std::span<const double> y);

double fairness_round(const RoundOutcome& outcome);
double fairness_over_time(std::span<const double> cumulative_contributions);

struct MeasurePoint {
  double mean = 0.0;
  double ci_half_width = 0.0;
};

struct MeasureSeries {
  Measure measure = Measure::Success;
  std::vector<MeasurePoint> per_timestep;
  std::size_t population = 0;
  std::string strategy;
};

/// Two-sided Student-t quantile at the given confidence level.
double t_critical(double confidence, std::size_t degrees_of_freedom);

/// Per-timestep mean and 95% confidence half-width across repetitions.
/// Each inner vector is one repetition. Needs >= 2 equal-length repetitions.
MeasureSeries aggregate(const std::vector<std::vector<double>>& series_per_repetition);

}  // namespace vcg
