#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vcg {

enum class Decision : std::uint8_t { Defect = 0, Contribute = 1 };

inline bool contributes(Decision d) { return d == Decision::Contribute; }

/// Success reward and failure penalty, constant for a run.
/// `penalty` is the positive magnitude of the loss.
struct PayoffParams {
  double reward = 1.0;
  double penalty = 5.0;
  // Charge p_i to contributors in addition to c_i. Off by default.
  bool charge_privacy = false;
};

/// Exogenous state of one round.
///
/// The threshold may exceed the total value; strategies decide what to do
/// about infeasible rounds. A zero threshold is accepted and always succeeds
/// (the grid scenario produces these when the surplus covers all demand).
struct RoundInput {
  std::vector<double> values;
  std::vector<double> costs;
  std::vector<double> privacy_costs;
  double threshold = 0.0;

  std::size_t size() const { return values.size(); }
  double total_value() const;
  /// Throws ContractError unless lengths agree, n >= 1 and entries are >= 0.
  void validate() const;
};

struct RoundOutcome {
  double quality = 0.0;
  bool success = false;
  std::vector<double> utilities;
  std::size_t contributor_count = 0;
  std::vector<double> contributed_values;
};

double quality(const RoundInput& input, std::span<const Decision> decisions);

/// The boundary counts: quality == threshold succeeds.
bool round_success(double quality, double threshold);

double agent_utility(Decision decision, double cost, bool success, const PayoffParams& payoffs,
                     double privacy_cost = 0.0);

RoundOutcome evaluate_round(const RoundInput& input, std::span<const Decision> decisions,
                            const PayoffParams& payoffs);

/// Threshold public-goods condition: reward + penalty > max_cost.
bool is_threshold_pgg(const PayoffParams& payoffs, double max_cost);

}  // namespace vcg
