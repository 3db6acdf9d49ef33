#include "vcg/game.hpp"

#include <numeric>
#include <string>

#include "vcg/errors.hpp"

namespace vcg {

namespace {

void check_length(const RoundInput& input, std::span<const Decision> decisions) {
  if (decisions.size() != input.size()) {
    throw ContractError("decision vector has " + std::to_string(decisions.size()) +
                        " entries, round has " + std::to_string(input.size()) + " agents");
  }
}

}  // namespace

double RoundInput::total_value() const {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

void RoundInput::validate() const {
  const std::size_t n = values.size();
  if (n == 0) throw ContractError("round must have at least one agent");
  if (costs.size() != n || privacy_costs.size() != n) {
    throw ContractError("values, costs and privacy_costs must have equal length");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(values[i] >= 0.0) || !(costs[i] >= 0.0) || !(privacy_costs[i] >= 0.0)) {
      throw ContractError("negative or NaN entry for agent " + std::to_string(i));
    }
  }
  if (!(threshold >= 0.0)) throw ContractError("threshold must be non-negative");
}

double quality(const RoundInput& input, std::span<const Decision> decisions) {
  check_length(input, decisions);
  double q = 0.0;
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    if (contributes(decisions[i])) q += input.values[i];
  }
  return q;
}

bool round_success(double quality, double threshold) { return quality >= threshold; }

double agent_utility(Decision decision, double cost, bool success, const PayoffParams& payoffs,
                     double privacy_cost) {
  double u = success ? payoffs.reward : -payoffs.penalty;
  if (contributes(decision)) {
    u -= cost;
    if (payoffs.charge_privacy) u -= privacy_cost;
  }
  return u;
}

RoundOutcome evaluate_round(const RoundInput& input, std::span<const Decision> decisions,
                            const PayoffParams& payoffs) {
  check_length(input, decisions);
  const std::size_t n = input.size();
  RoundOutcome out;
  out.contributed_values.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (contributes(decisions[i])) {
      out.contributed_values[i] = input.values[i];
      out.quality += input.values[i];
      ++out.contributor_count;
    }
  }
  out.success = round_success(out.quality, input.threshold);
  out.utilities.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.utilities[i] = agent_utility(decisions[i], input.costs[i], out.success, payoffs,
                                     input.privacy_costs[i]);
  }
  return out;
}

bool is_threshold_pgg(const PayoffParams& payoffs, double max_cost) {
  return payoffs.reward + payoffs.penalty > max_cost;
}

}  // namespace vcg
