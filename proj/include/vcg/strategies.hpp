#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "vcg/game.hpp"
#include "vcg/scenarios.hpp"

namespace vcg {

/// What a localized agent sees before deciding: its own value and cost.
struct Observation {
  double own_value = 0.0;
  double own_cost = 0.0;
  std::int64_t round_index = 0;
};

/// What a localized agent learns after a round: its own action and payoff.
struct Feedback {
  Decision own_action = Decision::Contribute;
  double own_utility = 0.0;
  bool success = false;
};

// ------------------------------------------------------------- baselines

Decision full_decide(const Observation& obs);

/// Contributes with probability `p_contribute` (0.5 for the random baseline).
Decision random_decide(const Observation& obs, Rng& rng, double p_contribute = 0.5);

// ----------------------------------------------------------- centralized

/// Contribute exactly on the approximate min-cost cover. When even full
/// contribution misses the threshold, everyone contributes.
std::vector<Decision> centralized_assign(const RoundInput& input, double epsilon);

// ---------------------------------------------------- aspiration learning

struct AspirationState {
  double aspiration = 0.0;
  Decision last_action = Decision::Contribute;
  double last_utility = 0.0;
  double switch_scale = 6.0;     // > 0, utility units
  double aspiration_step = 0.1;  // in (0, 1]

  void validate() const;
};

/// Satisficing rule: repeat the last action when the last payoff met the
/// aspiration; otherwise switch with probability
/// min(1, (aspiration - last_utility) / switch_scale). The observation is
/// deliberately unused.
Decision aspiration_decide(const AspirationState& state, const Observation& obs, Rng& rng);

/// aspiration += step * (utility - aspiration); remembers action and payoff.
void aspiration_update(AspirationState& state, const Feedback& fb);

/// Start from contribution with the aspiration at the expected payoff of a
/// successful contribution, reward - mean_cost.
void pretrain(AspirationState& state, const PayoffParams& payoffs, double mean_cost);

// ------------------------------------------------------------ Q-learning

struct QConfig {
  double learning_rate = 0.1;  // (0, 1]
  double discount = 0.9;       // [0, 1)
  // Exploration decays exponentially from explore_start to explore_end over
  // the first decay_fraction of the run, then stays at explore_end.
  double explore_start = 0.1;
  double explore_end = 0.01;
  double decay_fraction = 0.2;
  std::size_t value_buckets = 4;
  std::size_t cost_buckets = 4;
  std::size_t pretrain_rounds = 8;

  void validate() const;
};

/// Tabular learner over (value bucket, cost bucket) x {Contribute, Defect}.
class QState {
 public:
  QState(const QConfig& cfg, Support values, Support costs);

  std::size_t bucket_count() const { return cfg_.value_buckets * cfg_.cost_buckets; }
  /// Bucket of an observation; values outside the supports clamp to the edge.
  std::size_t bucket(const Observation& obs) const;
  /// Midpoint cost of a bucket's cost band.
  double bucket_cost(std::size_t bucket) const;

  double q(std::size_t bucket, Decision a) const { return table_[2 * bucket + index(a)]; }
  double& q(std::size_t bucket, Decision a) { return table_[2 * bucket + index(a)]; }
  double best_value(std::size_t bucket) const;
  /// Argmax action, Contribute on ties.
  Decision greedy(std::size_t bucket) const;

  std::span<const double> table() const { return table_; }
  const QConfig& config() const { return cfg_; }

  double exploration = 0.1;

 private:
  static std::size_t index(Decision a) { return a == Decision::Contribute ? 0 : 1; }

  QConfig cfg_;
  Support values_;
  Support costs_;
  std::vector<double> table_;
};

double exploration_rate(const QConfig& cfg, std::size_t step, std::size_t total_steps);

/// epsilon-greedy over the observation's bucket.
Decision q_decide(const QState& state, const Observation& obs, Rng& rng);

/// One temporal-difference step for the (acted, action) pair, bootstrapping
/// from the bucket of the next observation.
void q_update(QState& state, const Observation& acted, const Feedback& fb,
              const Observation& next);

/// Trains every bucket on synthetic rounds in which contributing succeeds
/// (reward - bucket cost) and defecting fails (-penalty), so the greedy
/// policy contributes everywhere.
void pretrain(QState& state, const PayoffParams& payoffs, std::size_t rounds);

// ------------------------------------------------------------ populations

enum class StrategyKind { Full, Random, Knapsack, Aspiration, QLearning };

std::string_view strategy_name(StrategyKind kind);
StrategyKind parse_strategy(std::string_view name);
/// Full and random are the reference baselines.
bool is_baseline(StrategyKind kind);

struct StrategyConfig {
  StrategyKind kind = StrategyKind::Full;
  double solver_epsilon = 0.1;
  double random_contribute_probability = 0.5;
  double switch_scale = 0.0;  // 0: reward + penalty
  double aspiration_step = 0.1;
  QConfig q;
};

/// Decision makers for a whole population. Localized populations hand each
/// agent only its own Observation and Feedback.
class Population {
 public:
  virtual ~Population() = default;

  virtual void decide(const RoundInput& input, std::span<Decision> out) = 0;
  /// Learning step once the round is evaluated; `next` is the following
  /// round when known.
  virtual void learn(const RoundInput& /*acted*/, std::span<const Decision> /*decisions*/,
                     const RoundOutcome& /*outcome*/, const RoundInput* /*next*/) {}
  /// True when every agent reveals its private state to a coordinator.
  virtual bool discloses_all() const { return false; }
};

struct PopulationContext {
  std::size_t agents = 0;
  std::size_t total_steps = 1;
  std::uint64_t seed = 0;
  PayoffParams payoffs;
  Support value_support;
  Support cost_support;
  double mean_cost = 0.0;
};

std::unique_ptr<Population> make_population(const StrategyConfig& cfg, const PopulationContext& ctx);

}  // namespace vcg
