#include "vcg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "vcg/errors.hpp"

namespace vcg {

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::Success: return "success";
    case Measure::Efficiency: return "efficiency";
    case Measure::Welfare: return "welfare";
    case Measure::Privacy: return "privacy";
    case Measure::Fairness: return "fairness";
    case Measure::FairnessOverTime: return "fairness_over_time";
  }
  return "unknown";
}

Measure parse_measure(std::string_view name) {
  for (Measure m : kAllMeasures) {
    if (measure_name(m) == name) return m;
  }
  throw ContractError("unknown measure '" + std::string(name) + "'");
}

double success_measure(double quality, double threshold) {
  if (threshold <= 0.0) return 1.0;
  return std::min(1.0, quality / threshold);
}

double efficiency_measure(double quality, double threshold) {
  if (threshold > quality) return 0.0;
  if (quality == 0.0) return 1.0;
  return threshold / quality;
}

double welfare_measure(std::span<const double> utilities) {
  if (utilities.empty()) throw ContractError("welfare of an empty population");
  return std::accumulate(utilities.begin(), utilities.end(), 0.0) /
         static_cast<double>(utilities.size());
}

double privacy_measure(std::span<const Decision> decisions) {
  const auto disclosed =
      static_cast<std::size_t>(std::count(decisions.begin(), decisions.end(), Decision::Contribute));
  return privacy_measure(disclosed, decisions.size());
}

double privacy_measure(std::size_t disclosed, std::size_t population) {
  if (population == 0) throw ContractError("privacy of an empty population");
  if (disclosed > population) throw ContractError("more disclosures than agents");
  return 1.0 - static_cast<double>(disclosed) / static_cast<double>(population);
}

double gini(std::span<const double> y) {
  if (y.empty()) return 0.0;
  std::vector<double> sorted(y.begin(), y.end());
  for (double v : sorted) {
    if (!(v >= 0.0)) throw ContractError("gini requires non-negative entries");
  }
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double total = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    // Rank is 1-based: weight n + 1 - rank.
    weighted += (n - static_cast<double>(i)) * sorted[i];
    total += sorted[i];
  }
  if (total == 0.0) return 0.0;
  const double g = (n + 1.0 - 2.0 * weighted / total) / n;
  return std::max(0.0, g);
}

double fairness_round(const RoundOutcome& outcome) { return gini(outcome.contributed_values); }

double fairness_over_time(std::span<const double> cumulative_contributions) {
  return gini(cumulative_contributions);
}

double t_critical(double confidence, std::size_t degrees_of_freedom) {
  if (degrees_of_freedom == 0) throw ContractError("t quantile needs at least one degree of freedom");
  boost::math::students_t dist(static_cast<double>(degrees_of_freedom));
  return boost::math::quantile(dist, 0.5 + confidence / 2.0);
}

MeasureSeries aggregate(const std::vector<std::vector<double>>& series_per_repetition) {
  const std::size_t reps = series_per_repetition.size();
  if (reps < 2) throw ContractError("confidence interval undefined for fewer than 2 repetitions");
  const std::size_t steps = series_per_repetition.front().size();
  for (const auto& s : series_per_repetition) {
    if (s.size() != steps) throw ContractError("repetitions differ in length");
  }
  const double t = t_critical(0.95, reps - 1);
  const double r = static_cast<double>(reps);

  MeasureSeries out;
  out.per_timestep.resize(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    double sum = 0.0;
    for (const auto& s : series_per_repetition) sum += s[k];
    const double mean = sum / r;
    double ss = 0.0;
    for (const auto& s : series_per_repetition) ss += (s[k] - mean) * (s[k] - mean);
    const double sd = std::sqrt(ss / (r - 1.0));
    out.per_timestep[k] = {mean, t * sd / std::sqrt(r)};
  }
  return out;
}

}  // namespace vcg
