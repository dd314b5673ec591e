#include "tdlab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tdlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad number for " + key + ": '" + value + "'");
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer for " + key + ": '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    std::uint64_t v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad seed for " + key + ": '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("config: bad boolean for " + key + ": '" + value + "'");
}

ExperimentKind parse_experiment(const std::string& value) {
  if (value == "td_divergence") return ExperimentKind::td_divergence;
  if (value == "avg_reward_estimate") return ExperimentKind::avg_reward_estimate;
  if (value == "performance") return ExperimentKind::performance;
  throw ConfigError("config: unknown experiment '" + value + "'");
}

AgentVariant parse_agent(const std::string& value) {
  if (value == "tabular_q") return AgentVariant::tabular_q;
  if (value == "tabular_differential_q") return AgentVariant::tabular_differential_q;
  if (value == "linear_dqn") return AgentVariant::linear_dqn;
  if (value == "mlp_dqn") return AgentVariant::mlp_dqn;
  if (value == "a2c_linear") return AgentVariant::a2c_linear;
  if (value == "a2c_mlp") return AgentVariant::a2c_mlp;
  throw ConfigError("config: unknown agent '" + value + "'");
}

EnvKind parse_env_kind(const std::string& value) {
  if (value == "random_mdp") return EnvKind::random_mdp;
  if (value == "ring_mdp") return EnvKind::ring_mdp;
  if (value == "two_state_swap") return EnvKind::two_state_swap;
  if (value == "pendulum") return EnvKind::pendulum;
  if (value == "pendulum_discrete") return EnvKind::pendulum_discrete;
  throw ConfigError("config: unknown environment '" + value + "'");
}

TargetKind parse_mode(const std::string& value) {
  if (value == "discounted") return TargetKind::discounted;
  if (value == "differential") return TargetKind::differential;
  if (value == "centered") return TargetKind::centered;
  throw ConfigError("config: unknown mode '" + value + "'");
}

AvgRewardRule parse_rule(const std::string& value) {
  if (value == "none") return AvgRewardRule::none;
  if (value == "implicit") return AvgRewardRule::implicit_td;
  if (value == "explicit") return AvgRewardRule::explicit_td;
  if (value == "smallest_magnitude") return AvgRewardRule::smallest_magnitude;
  throw ConfigError("config: unknown avg_reward_rule '" + value + "'");
}

AdvantageRule parse_advantage(const std::string& value) {
  if (value == "implicit") return AdvantageRule::implicit_td;
  if (value == "explicit") return AdvantageRule::explicit_td;
  throw ConfigError("config: unknown advantage_rule '" + value + "'");
}

OptimizerKind parse_optimizer(const std::string& value) {
  if (value == "sgd") return OptimizerKind::sgd;
  if (value == "adam") return OptimizerKind::adam;
  throw ConfigError("config: unknown optimizer '" + value + "'");
}

LossKind parse_loss(const std::string& value) {
  if (value == "mean_square") return LossKind::mean_square_value;
  if (value == "smooth_l1") return LossKind::smooth_l1;
  throw ConfigError("config: unknown loss '" + value + "'");
}

}  // namespace

IniFile IniFile::parse_string(const std::string& text) {
  IniFile ini;
  std::stringstream ss(text);
  std::string line;
  std::size_t current = std::string::npos;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        throw ConfigError("config: malformed section at line " + std::to_string(line_no));
      }
      ini.sections.push_back({trim(t.substr(1, t.size() - 2)), {}});
      current = ini.sections.size() - 1;
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: expected key = value at line " + std::to_string(line_no));
    }
    if (current == std::string::npos) {
      throw ConfigError("config: key outside any section at line " + std::to_string(line_no));
    }
    ini.sections[current].entries.emplace_back(trim(t.substr(0, eq)),
                                               trim(t.substr(eq + 1)));
  }
  return ini;
}

IniFile IniFile::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str());
}

const std::string* IniFile::find(const std::string& section, const std::string& key) const {
  for (const Section& s : sections) {
    if (s.name != section) continue;
    for (const Entry& e : s.entries) {
      if (e.first == key) return &e.second;
    }
  }
  return nullptr;
}

void apply_override(RunConfig& config, const std::string& dotted_key,
                    const std::string& value) {
  std::size_t dot = dotted_key.find('.');
  if (dot == std::string::npos) {
    throw ConfigError("config: override key must be section.key: '" + dotted_key + "'");
  }
  std::string section = dotted_key.substr(0, dot);
  std::string key = dotted_key.substr(dot + 1);

  if (section == "run") {
    if (key == "experiment") {
      config.experiment = parse_experiment(value);
    } else if (key == "agent") {
      config.agent = parse_agent(value);
    } else if (key == "seeds") {
      config.seeds.clear();
      for (const std::string& s : split_list(value)) config.seeds.push_back(parse_u64(key, s));
    } else if (key == "master_seed") {
      config.master_seed = parse_u64(key, value);
    } else if (key == "total_steps") {
      config.total_steps = parse_long(key, value);
    } else if (key == "metric_window") {
      config.metric_window = static_cast<int>(parse_long(key, value));
    } else if (key == "output_dir") {
      config.output_dir = value;
    } else if (key == "initial_avg_reward") {
      config.initial_avg_reward = parse_double(key, value);
    } else if (key == "initial_avg_rewards") {
      config.initial_avg_rewards.clear();
      for (const std::string& s : split_list(value)) {
        config.initial_avg_rewards.push_back(parse_double(key, s));
      }
    } else {
      throw ConfigError("config: unknown key run." + key);
    }
    return;
  }
  if (section == "env") {
    if (key == "kind") {
      config.env.kind = parse_env_kind(value);
    } else if (key == "mdp_seed") {
      config.env.mdp_seed = parse_u64(key, value);
    } else if (key == "num_states") {
      config.env.num_states = static_cast<int>(parse_long(key, value));
    } else if (key == "num_actions") {
      config.env.num_actions = static_cast<int>(parse_long(key, value));
    } else if (key == "ergodic") {
      config.env.ergodic = parse_bool(key, value);
    } else if (key == "max_episode_steps") {
      config.env.max_episode_steps = static_cast<int>(parse_long(key, value));
    } else {
      throw ConfigError("config: unknown key env." + key);
    }
    return;
  }
  if (section == "agent") {
    AgentConfig& a = config.agent_config;
    if (key == "alpha") {
      a.alpha = parse_double(key, value);
    } else if (key == "eta") {
      a.eta = parse_double(key, value);
    } else if (key == "gamma") {
      a.gamma = parse_double(key, value);
    } else if (key == "lambda") {
      a.lambda = parse_double(key, value);
    } else if (key == "batch_size") {
      a.batch_size = static_cast<int>(parse_long(key, value));
    } else if (key == "tau_polyak") {
      a.tau_polyak = parse_double(key, value);
    } else if (key == "update_period") {
      a.update_period = static_cast<int>(parse_long(key, value));
    } else if (key == "target_update_period") {
      a.target_update_period = static_cast<int>(parse_long(key, value));
    } else if (key == "buffer_capacity") {
      a.buffer_capacity = static_cast<std::size_t>(parse_long(key, value));
    } else if (key == "buffer_min") {
      a.buffer_min = static_cast<std::size_t>(parse_long(key, value));
    } else if (key == "epsilon") {
      a.exploration_epsilon = parse_double(key, value);
    } else if (key == "optimizer") {
      a.optimizer = parse_optimizer(value);
    } else if (key == "loss") {
      a.loss = parse_loss(value);
    } else if (key == "mode") {
      config.target = parse_mode(value);
    } else if (key == "avg_reward_rule") {
      config.avg_reward_rule = parse_rule(value);
    } else if (key == "advantage_rule") {
      config.advantage_rule = parse_advantage(value);
    } else if (key == "max_action") {
      config.max_action = parse_double(key, value);
    } else {
      throw ConfigError("config: unknown key agent." + key);
    }
    return;
  }
  if (section == "features") {
    if (key == "normalize") {
      config.features.normalize = parse_bool(key, value);
    } else if (key == "num_tilings") {
      config.features.num_tilings = static_cast<int>(parse_long(key, value));
    } else if (key == "tiles_per_dim") {
      config.features.tiles_per_dim = static_cast<int>(parse_long(key, value));
    } else if (key == "tabular_bins_per_dim") {
      config.features.tabular_bins_per_dim = static_cast<int>(parse_long(key, value));
    } else {
      throw ConfigError("config: unknown key features." + key);
    }
    return;
  }
  if (section == "network") {
    if (key == "hidden_dims") {
      config.hidden_dims.clear();
      for (const std::string& s : split_list(value)) {
        config.hidden_dims.push_back(static_cast<int>(parse_long(key, s)));
      }
    } else {
      throw ConfigError("config: unknown key network." + key);
    }
    return;
  }
  throw ConfigError("config: unknown section '" + section + "'");
}

RunConfig run_config_from_ini(const IniFile& ini) {
  RunConfig config;
  for (const IniFile::Section& section : ini.sections) {
    for (const IniFile::Entry& entry : section.entries) {
      apply_override(config, section.name + "." + entry.first, entry.second);
    }
  }
  return config;
}

RunConfig load_run_config(const std::string& path) {
  RunConfig config = run_config_from_ini(IniFile::parse_file(path));
  if (const char* out = std::getenv("TDLAB_OUT")) {
    config.output_dir = out;
  }
  return config;
}

std::vector<std::vector<std::pair<std::string, std::string>>> sweep_grid(
    const IniFile& grid) {
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  for (const IniFile::Section& section : grid.sections) {
    if (section.name != "grid") continue;
    for (const IniFile::Entry& entry : section.entries) {
      std::vector<std::string> values = split_list(entry.second);
      if (values.empty()) throw ConfigError("sweep: empty value list for " + entry.first);
      axes.emplace_back(entry.first, std::move(values));
    }
  }
  if (axes.empty()) throw ConfigError("sweep: no [grid] section with keys");

  std::vector<std::vector<std::pair<std::string, std::string>>> combos{{}};
  for (const auto& [key, values] : axes) {
    std::vector<std::vector<std::pair<std::string, std::string>>> expanded;
    for (const auto& combo : combos) {
      for (const std::string& v : values) {
        auto next = combo;
        next.emplace_back(key, v);
        expanded.push_back(std::move(next));
      }
    }
    combos = std::move(expanded);
  }
  return combos;
}

}  // namespace tdlab
