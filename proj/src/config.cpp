#include "vcg/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <sstream>

#include "vcg/errors.hpp"

namespace vcg {

namespace {

std::string describe(std::string_view section, std::string_view key) {
  return std::string(section) + "." + std::string(key);
}

template <typename T>
T number(std::string_view section, std::string_view key, const std::string& text) {
  T out{};
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError(describe(section, key) + ": cannot parse '" + text + "'");
  }
  return out;
}

bool boolean(std::string_view section, std::string_view key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(describe(section, key) + ": expected a boolean, got '" + text + "'");
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string_view scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Synthetic: return "synthetic";
    case ScenarioKind::Grid: return "grid";
    case ScenarioKind::Sensing: return "sensing";
  }
  return "unknown";
}

ScenarioKind parse_scenario(std::string_view name) {
  for (ScenarioKind k : {ScenarioKind::Synthetic, ScenarioKind::Grid, ScenarioKind::Sensing}) {
    if (scenario_name(k) == name) return k;
  }
  throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const std::string t = trim(item);
    if (t.empty()) continue;
    out.push_back(number<std::size_t>("experiment", "populations", t));
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (steps < 1) throw ConfigError("steps must be >= 1");
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (population_sizes.empty()) throw ConfigError("population_sizes must not be empty");
  for (std::size_t n : population_sizes) {
    if (n == 0) throw ConfigError("population sizes must be >= 1");
  }
  if (!(payoffs.reward > 0.0 && payoffs.penalty > 0.0)) {
    throw ConfigError("reward and penalty must be positive");
  }
  if (!(strategy.solver_epsilon > 0.0 && strategy.solver_epsilon <= 1.0)) {
    throw ConfigError("solver epsilon must lie in (0, 1]");
  }
  if (!(strategy.random_contribute_probability >= 0.0 &&
        strategy.random_contribute_probability <= 1.0)) {
    throw ConfigError("random contribution probability must lie in [0, 1]");
  }
  if (strategy.switch_scale < 0.0) throw ConfigError("switch_scale must be >= 0");
  if (!(strategy.aspiration_step > 0.0 && strategy.aspiration_step <= 1.0)) {
    throw ConfigError("aspiration_step must lie in (0, 1]");
  }
  try {
    strategy.q.validate();
    SyntheticConfig s = synthetic;
    s.n = 1;
    s.validate();
  } catch (const ContractError& e) {
    throw ConfigError(e.what());
  }
  if (grid.need_low < 0.0 || grid.need_high < grid.need_low) {
    throw ConfigError("grid need range must satisfy 0 <= need_low <= need_high");
  }
  if (grid.comfort_factor < 0.0 || grid.comfort_noise < 0.0) {
    throw ConfigError("grid comfort parameters must be non-negative");
  }
  if (sensing.speed_change_scale < 0.0 || sensing.cost_scale < 0.0 ||
      sensing.threshold_fraction < 0.0) {
    throw ConfigError("sensing parameters must be non-negative");
  }
}

void apply_setting(ExperimentConfig& cfg, std::string_view section, std::string_view key,
                   const std::string& value) {
  auto dbl = [&] { return number<double>(section, key, value); };
  auto size = [&] { return number<std::size_t>(section, key, value); };
  auto flag = [&] { return boolean(section, key, value); };

  if (section == "experiment") {
    if (key == "scenario") cfg.scenario = parse_scenario(value);
    else if (key == "strategy") cfg.strategy.kind = parse_strategy(value);
    else if (key == "populations") cfg.population_sizes = parse_size_list(value);
    else if (key == "steps") cfg.steps = size();
    else if (key == "repetitions") cfg.repetitions = size();
    else if (key == "seed") cfg.seed = number<std::uint64_t>(section, key, value);
    else if (key == "threads") cfg.threads = size();
    else if (key == "output") cfg.output = value;
    else throw ConfigError("unknown key " + describe(section, key));
  } else if (section == "payoff") {
    if (key == "reward") cfg.payoffs.reward = dbl();
    else if (key == "penalty") cfg.payoffs.penalty = dbl();
    else if (key == "charge_privacy") cfg.payoffs.charge_privacy = flag();
    else throw ConfigError("unknown key " + describe(section, key));
  } else if (section == "strategy") {
    if (key == "epsilon") cfg.strategy.solver_epsilon = dbl();
    else if (key == "random_contribute_probability") cfg.strategy.random_contribute_probability = dbl();
    else if (key == "switch_scale") cfg.strategy.switch_scale = dbl();
    else if (key == "aspiration_step") cfg.strategy.aspiration_step = dbl();
    else throw ConfigError("unknown key " + describe(section, key));
  } else if (section == "qlearning") {
    QConfig& q = cfg.strategy.q;
    if (key == "learning_rate") q.learning_rate = dbl();
    else if (key == "discount") q.discount = dbl();
    else if (key == "explore_start") q.explore_start = dbl();
    else if (key == "explore_end") q.explore_end = dbl();
    else if (key == "decay_fraction") q.decay_fraction = dbl();
    else if (key == "value_buckets") q.value_buckets = size();
    else if (key == "cost_buckets") q.cost_buckets = size();
    else if (key == "pretrain_rounds") q.pretrain_rounds = size();
    else throw ConfigError("unknown key " + describe(section, key));
  } else if (section == "synthetic") {
    SyntheticConfig& s = cfg.synthetic;
    if (key == "value_low") s.value_low = dbl();
    else if (key == "value_high") s.value_high = dbl();
    else if (key == "cost_sigma") s.cost_sigma = dbl();
    else if (key == "threshold_fraction") s.threshold_fraction = dbl();
    else if (key == "resample_infeasible") s.resample_infeasible = flag();
    else throw ConfigError("unknown key " + describe(section, key));
  } else if (section == "grid") {
    GridConfig& g = cfg.grid;
    if (key == "data") cfg.grid_data = value;
    else if (key == "comfort_factor") g.comfort_factor = dbl();
    else if (key == "comfort_noise") g.comfort_noise = dbl();
    else if (key == "need_low") g.need_low = dbl();
    else if (key == "need_high") g.need_high = dbl();
    else throw ConfigError("unknown key " + describe(section, key));
  } else if (section == "sensing") {
    SensingConfig& s = cfg.sensing;
    if (key == "data") cfg.trace_data = value;
    else if (key == "speed_change_scale") s.speed_change_scale = dbl();
    else if (key == "cost_scale") s.cost_scale = dbl();
    else if (key == "threshold_fraction") s.threshold_fraction = dbl();
    else if (key == "strict") s.strict = flag();
    else throw ConfigError("unknown key " + describe(section, key));
  } else {
    throw ConfigError("unknown section [" + std::string(section) + "]");
  }
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(path.string() + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw ConfigError(path.string() + ": setting '" + section + "' outside a [section]");
    }
    for (const auto& [key, node] : body) {
      try {
        apply_setting(base, section, key, trim(node.data()));
      } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
      }
    }
  }
  const std::filesystem::path dir = path.parent_path();
  for (std::filesystem::path* p : {&base.grid_data, &base.trace_data}) {
    if (!p->empty() && p->is_relative()) *p = dir / *p;
  }
  return base;
}

}  // namespace vcg
