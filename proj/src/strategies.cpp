#include "vcg/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vcg/errors.hpp"
#include "vcg/solver.hpp"

namespace vcg {

namespace {

double unit_draw(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

Decision flip(Decision d) {
  return d == Decision::Contribute ? Decision::Defect : Decision::Contribute;
}

std::size_t band(double x, Support s, std::size_t buckets) {
  if (!(s.high > s.low)) return 0;
  const double t = (x - s.low) / (s.high - s.low);
  if (!(t > 0.0)) return 0;
  const auto k = static_cast<std::size_t>(t * static_cast<double>(buckets));
  return std::min(k, buckets - 1);
}

}  // namespace

Decision full_decide(const Observation&) { return Decision::Contribute; }

Decision random_decide(const Observation&, Rng& rng, double p_contribute) {
  return unit_draw(rng) < p_contribute ? Decision::Contribute : Decision::Defect;
}

std::vector<Decision> centralized_assign(const RoundInput& input, double epsilon) {
  const CoverInstance instance{input.values, input.costs, input.threshold};
  const CoverSolution sol = solve_fptas(instance, epsilon);
  if (!sol.feasible) return std::vector<Decision>(input.size(), Decision::Contribute);
  std::vector<Decision> out(input.size(), Decision::Defect);
  for (std::size_t i : sol.selected) out[i] = Decision::Contribute;
  return out;
}

// ---------------------------------------------------- aspiration learning

void AspirationState::validate() const {
  if (!(switch_scale > 0.0)) throw ContractError("switch_scale must be positive");
  if (!(aspiration_step > 0.0 && aspiration_step <= 1.0)) {
    throw ContractError("aspiration_step must lie in (0, 1]");
  }
}

Decision aspiration_decide(const AspirationState& state, const Observation&, Rng& rng) {
  const double draw = unit_draw(rng);
  if (state.last_utility >= state.aspiration) return state.last_action;
  const double p = std::min(1.0, (state.aspiration - state.last_utility) / state.switch_scale);
  return draw < p ? flip(state.last_action) : state.last_action;
}

void aspiration_update(AspirationState& state, const Feedback& fb) {
  state.aspiration += state.aspiration_step * (fb.own_utility - state.aspiration);
  state.last_action = fb.own_action;
  state.last_utility = fb.own_utility;
}

void pretrain(AspirationState& state, const PayoffParams& payoffs, double mean_cost) {
  state.aspiration = payoffs.reward - mean_cost;
  state.last_action = Decision::Contribute;
  state.last_utility = state.aspiration;
}

// ------------------------------------------------------------ Q-learning

void QConfig::validate() const {
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    throw ContractError("learning_rate must lie in (0, 1]");
  }
  if (!(discount >= 0.0 && discount < 1.0)) throw ContractError("discount must lie in [0, 1)");
  if (!(explore_start >= 0.0 && explore_start <= 1.0 && explore_end >= 0.0 &&
        explore_end <= 1.0)) {
    throw ContractError("exploration rates must lie in [0, 1]");
  }
  if (!(decay_fraction >= 0.0 && decay_fraction <= 1.0)) {
    throw ContractError("decay_fraction must lie in [0, 1]");
  }
  if (value_buckets == 0 || cost_buckets == 0) throw ContractError("bucket counts must be >= 1");
}

QState::QState(const QConfig& cfg, Support values, Support costs)
    : exploration(cfg.explore_start), cfg_(cfg), values_(values), costs_(costs) {
  cfg_.validate();
  table_.assign(2 * bucket_count(), 0.0);
}

std::size_t QState::bucket(const Observation& obs) const {
  return band(obs.own_value, values_, cfg_.value_buckets) * cfg_.cost_buckets +
         band(obs.own_cost, costs_, cfg_.cost_buckets);
}

double QState::bucket_cost(std::size_t bucket) const {
  const double width = (costs_.high - costs_.low) / static_cast<double>(cfg_.cost_buckets);
  return costs_.low + (static_cast<double>(bucket % cfg_.cost_buckets) + 0.5) * width;
}

double QState::best_value(std::size_t bucket) const {
  return std::max(q(bucket, Decision::Contribute), q(bucket, Decision::Defect));
}

Decision QState::greedy(std::size_t bucket) const {
  return q(bucket, Decision::Contribute) >= q(bucket, Decision::Defect) ? Decision::Contribute
                                                                        : Decision::Defect;
}

double exploration_rate(const QConfig& cfg, std::size_t step, std::size_t total_steps) {
  const double horizon = cfg.decay_fraction * static_cast<double>(total_steps);
  const double t = static_cast<double>(step);
  if (horizon <= 0.0 || t >= horizon) return cfg.explore_end;
  if (cfg.explore_start <= 0.0 || cfg.explore_end <= 0.0) {
    return cfg.explore_start + (cfg.explore_end - cfg.explore_start) * t / horizon;
  }
  return cfg.explore_start * std::pow(cfg.explore_end / cfg.explore_start, t / horizon);
}

Decision q_decide(const QState& state, const Observation& obs, Rng& rng) {
  const double explore = unit_draw(rng);
  const double coin = unit_draw(rng);
  if (explore < state.exploration) return coin < 0.5 ? Decision::Contribute : Decision::Defect;
  return state.greedy(state.bucket(obs));
}

void q_update(QState& state, const Observation& acted, const Feedback& fb,
              const Observation& next) {
  const QConfig& cfg = state.config();
  const std::size_t s = state.bucket(acted);
  const double target = fb.own_utility + cfg.discount * state.best_value(state.bucket(next));
  double& entry = state.q(s, fb.own_action);
  entry += cfg.learning_rate * (target - entry);
}

void pretrain(QState& state, const PayoffParams& payoffs, std::size_t rounds) {
  // Synthetic rounds are terminal: no bootstrap, so entries stay within
  // [-penalty, reward].
  const double alpha = state.config().learning_rate;
  for (std::size_t k = 0; k < rounds; ++k) {
    for (std::size_t s = 0; s < state.bucket_count(); ++s) {
      double& contribute = state.q(s, Decision::Contribute);
      double& defect = state.q(s, Decision::Defect);
      contribute += alpha * (payoffs.reward - state.bucket_cost(s) - contribute);
      defect += alpha * (-payoffs.penalty - defect);
    }
  }
}

// ------------------------------------------------------------ populations

std::string_view strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Full: return "full";
    case StrategyKind::Random: return "random";
    case StrategyKind::Knapsack: return "knapsack";
    case StrategyKind::Aspiration: return "aspiration";
    case StrategyKind::QLearning: return "qlearning";
  }
  return "unknown";
}

StrategyKind parse_strategy(std::string_view name) {
  for (StrategyKind k : {StrategyKind::Full, StrategyKind::Random, StrategyKind::Knapsack,
                         StrategyKind::Aspiration, StrategyKind::QLearning}) {
    if (strategy_name(k) == name) return k;
  }
  throw ConfigError("unknown strategy '" + std::string(name) + "'");
}

bool is_baseline(StrategyKind kind) {
  return kind == StrategyKind::Full || kind == StrategyKind::Random;
}

namespace {

constexpr std::uint64_t kAgentStream = 0xA6E;

Observation observe(const RoundInput& input, std::size_t i, std::int64_t t) {
  return {input.values[i], input.costs[i], t};
}

std::vector<Rng> agent_streams(const PopulationContext& ctx) {
  std::vector<Rng> rngs;
  rngs.reserve(ctx.agents);
  for (std::size_t i = 0; i < ctx.agents; ++i) {
    rngs.emplace_back(derive_seed(ctx.seed, {kAgentStream, i}));
  }
  return rngs;
}

class FullPopulation final : public Population {
 public:
  void decide(const RoundInput& input, std::span<Decision> out) override {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = full_decide(observe(input, i, 0));
  }
};

class RandomPopulation final : public Population {
 public:
  RandomPopulation(const PopulationContext& ctx, double p) : rngs_(agent_streams(ctx)), p_(p) {}

  void decide(const RoundInput& input, std::span<Decision> out) override {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = random_decide(observe(input, i, t_), rngs_[i], p_);
    }
    ++t_;
  }

 private:
  std::vector<Rng> rngs_;
  double p_;
  std::int64_t t_ = 0;
};

class KnapsackPopulation final : public Population {
 public:
  explicit KnapsackPopulation(double epsilon) : epsilon_(epsilon) {}

  void decide(const RoundInput& input, std::span<Decision> out) override {
    const std::vector<Decision> d = centralized_assign(input, epsilon_);
    std::copy(d.begin(), d.end(), out.begin());
  }
  bool discloses_all() const override { return true; }

 private:
  double epsilon_;
};

class AspirationPopulation final : public Population {
 public:
  AspirationPopulation(const StrategyConfig& cfg, const PopulationContext& ctx)
      : rngs_(agent_streams(ctx)) {
    AspirationState proto;
    proto.switch_scale =
        cfg.switch_scale > 0.0 ? cfg.switch_scale : ctx.payoffs.reward + ctx.payoffs.penalty;
    proto.aspiration_step = cfg.aspiration_step;
    proto.validate();
    pretrain(proto, ctx.payoffs, ctx.mean_cost);
    agents_.assign(ctx.agents, proto);
  }

  void decide(const RoundInput& input, std::span<Decision> out) override {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = aspiration_decide(agents_[i], observe(input, i, t_), rngs_[i]);
    }
    ++t_;
  }

  void learn(const RoundInput&, std::span<const Decision> decisions, const RoundOutcome& outcome,
             const RoundInput*) override {
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      aspiration_update(agents_[i], {decisions[i], outcome.utilities[i], outcome.success});
    }
  }

 private:
  std::vector<AspirationState> agents_;
  std::vector<Rng> rngs_;
  std::int64_t t_ = 0;
};

class QPopulation final : public Population {
 public:
  QPopulation(const StrategyConfig& cfg, const PopulationContext& ctx)
      : rngs_(agent_streams(ctx)), total_steps_(ctx.total_steps) {
    QState proto(cfg.q, ctx.value_support, ctx.cost_support);
    pretrain(proto, ctx.payoffs, cfg.q.pretrain_rounds);
    agents_.assign(ctx.agents, proto);
  }

  void decide(const RoundInput& input, std::span<Decision> out) override {
    const double rate = exploration_rate(agents_.front().config(), t_, total_steps_);
    for (std::size_t i = 0; i < out.size(); ++i) {
      agents_[i].exploration = rate;
      out[i] = q_decide(agents_[i], observe(input, i, static_cast<std::int64_t>(t_)), rngs_[i]);
    }
  }

  void learn(const RoundInput& acted, std::span<const Decision> decisions,
             const RoundOutcome& outcome, const RoundInput* next) override {
    const auto t = static_cast<std::int64_t>(t_);
    if (next) {
      for (std::size_t i = 0; i < agents_.size(); ++i) {
        q_update(agents_[i], observe(acted, i, t),
                 {decisions[i], outcome.utilities[i], outcome.success}, observe(*next, i, t + 1));
      }
    }
    ++t_;
  }

 private:
  std::vector<QState> agents_;
  std::vector<Rng> rngs_;
  std::size_t total_steps_;
  std::size_t t_ = 0;
};

}  // namespace

std::unique_ptr<Population> make_population(const StrategyConfig& cfg,
                                            const PopulationContext& ctx) {
  if (ctx.agents == 0) throw ContractError("population must have at least one agent");
  switch (cfg.kind) {
    case StrategyKind::Full: return std::make_unique<FullPopulation>();
    case StrategyKind::Random:
      return std::make_unique<RandomPopulation>(ctx, cfg.random_contribute_probability);
    case StrategyKind::Knapsack: return std::make_unique<KnapsackPopulation>(cfg.solver_epsilon);
    case StrategyKind::Aspiration: return std::make_unique<AspirationPopulation>(cfg, ctx);
    case StrategyKind::QLearning: return std::make_unique<QPopulation>(cfg, ctx);
  }
  throw ContractError("unhandled strategy kind");
}

}  // namespace vcg
