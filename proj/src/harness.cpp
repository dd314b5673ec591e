#include "tdlab/harness.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>

#include "tdlab/dqn.hpp"
#include "tdlab/mdp.hpp"
#include "tdlab/pendulum.hpp"
#include "tdlab/policy.hpp"

namespace tdlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_mdp_env(EnvKind kind) {
  return kind == EnvKind::random_mdp || kind == EnvKind::ring_mdp ||
         kind == EnvKind::two_state_swap;
}

bool is_dqn_variant(AgentVariant v) {
  return v == AgentVariant::linear_dqn || v == AgentVariant::mlp_dqn;
}

bool is_a2c_variant(AgentVariant v) {
  return v == AgentVariant::a2c_linear || v == AgentVariant::a2c_mlp;
}

MdpSpec build_mdp(const EnvSettings& env) {
  switch (env.kind) {
    case EnvKind::random_mdp:
      return generate_random_mdp(env.mdp_seed, env.num_states, env.num_actions,
                                 env.ergodic);
    case EnvKind::ring_mdp:
      return make_ring_mdp(env.num_states);
    case EnvKind::two_state_swap:
      return make_two_state_swap();
    default:
      throw ConfigError("build_mdp: not a finite-MDP environment");
  }
}

std::unique_ptr<DiscreteEnv> build_discrete_env(const EnvSettings& env) {
  if (is_mdp_env(env.kind)) return std::make_unique<MdpEnv>(build_mdp(env));
  if (env.kind == EnvKind::pendulum_discrete) {
    PendulumParams params;
    params.max_episode_steps = env.max_episode_steps;
    return std::make_unique<DiscretePendulumEnv>(params);
  }
  throw ConfigError("build_discrete_env: environment has no discrete actions");
}

TileCodingSpec pendulum_tile_spec(const FeatureSettings& features, int num_actions) {
  TileCodingSpec spec;
  spec.num_tilings = features.num_tilings;
  spec.tiles_per_dim = features.tiles_per_dim;
  spec.state_low = {-1.0, -1.0, -8.0};
  spec.state_high = {1.0, 1.0, 8.0};
  spec.num_actions = num_actions;
  spec.normalize = features.normalize;
  return spec;
}

// (theta, theta_dot) grid for tabular control of the pendulum.
GridDiscretizer pendulum_grid(int bins_per_dim) {
  return GridDiscretizer{{-kPi, -8.0}, {kPi, 8.0}, {bins_per_dim, bins_per_dim}};
}

int discretize_pendulum_obs(const GridDiscretizer& grid, const Observation& obs) {
  double theta = std::atan2(obs.vec[1], obs.vec[0]);
  return grid.cell_id(std::vector<double>{theta, obs.vec[2]});
}

struct EpisodeTracker {
  double total = 0.0;
  bool episodic = false;

  std::optional<double> on_step(const StepResult& result) {
    if (!episodic) return std::nullopt;
    total += result.reward;
    if (result.terminal || result.truncated) {
      double finished = total;
      total = 0.0;
      return finished;
    }
    return std::nullopt;
  }
};

RunMetrics run_tabular(const RunConfig& config, std::uint64_t seed, SplitMix64& rng) {
  auto env = build_discrete_env(config.env);
  bool differential = config.agent == AgentVariant::tabular_differential_q;

  bool use_grid = env->num_states() < 0;
  GridDiscretizer grid = pendulum_grid(config.features.tabular_bins_per_dim);
  int num_states = use_grid ? grid.num_cells() : env->num_states();

  TabularQ q(num_states, env->num_actions());
  AvgRewardEstimator estimator;
  estimator.eta = config.agent_config.eta;
  estimator.value = config.initial_avg_reward;

  RunMetrics metrics;
  metrics.seed = seed;
  metrics.has_estimator = differential;
  metrics.initial_avg_reward = config.initial_avg_reward;

  Observation raw = env->reset(rng);
  EpisodeTracker episodes;
  episodes.episodic =
      config.env.kind == EnvKind::pendulum_discrete && config.env.max_episode_steps > 0;

  auto to_state = [&](const Observation& o) {
    Observation out;
    out.state_id = use_grid ? discretize_pendulum_obs(grid, o) : o.state_id;
    return out;
  };

  Observation obs = to_state(raw);
  double alpha = config.agent_config.alpha;
  for (long step = 0; step < config.total_steps; ++step) {
    int action = epsilon_greedy_action(q, obs, config.agent_config.exploration_epsilon, rng);
    StepResult result = env->step(action, rng);
    Observation next = to_state(result.next_observation);

    Transition t;
    t.state = obs;
    t.action = action;
    t.reward = result.reward;
    t.next_state = next;
    t.terminal = result.terminal;

    MetricRow row;
    row.step = step;
    if (differential) {
      auto update = tabular_differential_q_update(q, estimator, t, alpha);
      row.delta_e_mean = update.delta;
      row.delta_i_mean = update.delta;  // tabular: the two readings coincide
      row.avg_reward = estimator.value;
    } else {
      auto update = tabular_q_update(q, t, alpha, config.agent_config.gamma);
      row.delta_e_mean = update.delta_explicit;
      row.delta_i_mean = update.delta_implicit;
    }
    row.abs_gap = std::fabs(*row.delta_e_mean - *row.delta_i_mean);
    row.episode_return = episodes.on_step(result);
    metrics.rows.push_back(std::move(row));

    obs = next;
    if (result.terminal || result.truncated) obs = to_state(env->reset(rng));
  }
  metrics.final_avg_reward = estimator.value;
  return metrics;
}

std::unique_ptr<TrainableQ> build_q_function(const RunConfig& config,
                                             const DiscreteEnv& env, SplitMix64& rng) {
  if (config.agent == AgentVariant::linear_dqn) {
    if (env.num_states() >= 0) {
      return std::make_unique<LinearQ>(
          LinearQ::one_hot(env.num_states(), env.num_actions()));
    }
    return std::make_unique<LinearQ>(LinearQ::tile_coded(
        pendulum_tile_spec(config.features, env.num_actions())));
  }
  MlpSpec spec{env.observation_dim(), config.hidden_dims, env.num_actions()};
  return std::make_unique<MlpQ>(MlpQ::with_init(spec, rng));
}

RunMetrics run_dqn(const RunConfig& config, std::uint64_t seed, SplitMix64& rng) {
  auto env = build_discrete_env(config.env);
  DqnAgent agent(build_q_function(config, *env, rng), config.agent_config, config.target,
                 config.avg_reward_rule, config.initial_avg_reward);

  RunMetrics metrics;
  metrics.seed = seed;
  metrics.has_estimator = config.target != TargetKind::discounted;
  metrics.initial_avg_reward = config.initial_avg_reward;

  EpisodeTracker episodes;
  episodes.episodic =
      config.env.kind == EnvKind::pendulum_discrete && config.env.max_episode_steps > 0;

  Observation obs = env->reset(rng);
  for (long step = 0; step < config.total_steps; ++step) {
    int action = agent.act(obs, rng);
    StepResult result = env->step(action, rng);

    Transition t;
    t.state = obs;
    t.action = action;
    t.reward = result.reward;
    t.next_state = result.next_observation;
    t.terminal = result.terminal;
    agent.observe(t);

    MetricRow row;
    row.step = step;
    if (auto report = agent.update(rng)) {
      row.delta_e_mean = report->explicit_mean;
      row.delta_i_mean = report->implicit_mean;
      row.abs_gap = std::fabs(report->explicit_mean - report->implicit_mean);
    }
    if (metrics.has_estimator) row.avg_reward = agent.estimator().value;
    row.episode_return = episodes.on_step(result);
    metrics.rows.push_back(std::move(row));

    obs = result.next_observation;
    if (result.terminal || result.truncated) obs = env->reset(rng);
  }
  metrics.final_avg_reward = agent.estimator().value;
  metrics.ledger = agent.ledger();
  return metrics;
}

RunMetrics run_a2c(const RunConfig& config, std::uint64_t seed, SplitMix64& rng) {
  PendulumParams params;
  params.max_episode_steps = config.env.max_episode_steps;
  PendulumEnv env(params);

  std::unique_ptr<TrainableV> critic;
  if (config.agent == AgentVariant::a2c_linear) {
    TileCodingSpec tiles = pendulum_tile_spec(config.features, 1);
    critic = std::make_unique<LinearV>(LinearV::tile_coded(tiles));
  } else {
    MlpSpec spec{3, config.hidden_dims, 1};
    critic = std::make_unique<MlpV>(MlpV::with_init(spec, rng));
  }
  MlpSpec actor_spec{3, config.hidden_dims, 2};
  A2cAgent agent(std::move(critic),
                 SquashedGaussianActor::with_init(actor_spec, config.max_action, rng),
                 config.agent_config, config.advantage_rule);

  RunMetrics metrics;
  metrics.seed = seed;
  metrics.initial_avg_reward = config.initial_avg_reward;

  EpisodeTracker episodes;
  episodes.episodic = params.max_episode_steps > 0;

  Observation obs = env.reset(rng);
  for (long step = 0; step < config.total_steps; ++step) {
    ActionSample action = agent.act(obs, rng);
    StepResult result = env.step(action.action[0]);
    A2cReport report = agent.step_update(obs, action, result.reward,
                                         result.next_observation, result.terminal);

    MetricRow row;
    row.step = step;
    row.delta_e_mean = report.delta_explicit;
    row.delta_i_mean = report.delta_implicit;
    row.abs_gap = std::fabs(report.delta_explicit - report.delta_implicit);
    row.episode_return = episodes.on_step(result);
    metrics.rows.push_back(std::move(row));

    metrics.sign_total += 1;
    bool agree = (report.delta_explicit > 0.0 && report.delta_implicit > 0.0) ||
                 (report.delta_explicit < 0.0 && report.delta_implicit < 0.0) ||
                 (report.delta_explicit == 0.0 && report.delta_implicit == 0.0);
    if (agree) metrics.sign_agree_count += 1;

    obs = result.next_observation;
    if (result.terminal || result.truncated) obs = env.reset(rng);
  }
  metrics.final_avg_reward = 0.0;
  return metrics;
}

}  // namespace

void RunConfig::validate() const {
  agent_config.validate();
  if (seeds.empty()) throw ConfigError("RunConfig: seeds must be non-empty");
  if (total_steps <= 0) throw ConfigError("RunConfig: total_steps must be positive");
  if (metric_window < 1) throw ConfigError("RunConfig: metric_window must be >= 1");
  if (env.num_states < 2 && env.kind == EnvKind::random_mdp) {
    throw ConfigError("RunConfig: random MDPs need at least 2 states");
  }

  bool continuing_env =
      is_mdp_env(env.kind) ||
      ((env.kind == EnvKind::pendulum || env.kind == EnvKind::pendulum_discrete) &&
       env.max_episode_steps == 0);

  if (is_a2c_variant(agent)) {
    if (env.kind != EnvKind::pendulum) {
      throw ConfigError("RunConfig: A2C variants need the continuous-action pendulum");
    }
    return;
  }
  if (env.kind == EnvKind::pendulum) {
    throw ConfigError("RunConfig: value-based variants need a discrete-action environment");
  }

  if (agent == AgentVariant::tabular_q && target != TargetKind::discounted) {
    throw ConfigError("RunConfig: tabular_q is the discounted algorithm");
  }
  if ((agent == AgentVariant::tabular_q || agent == AgentVariant::tabular_differential_q) &&
      avg_reward_rule != AvgRewardRule::none) {
    throw ConfigError(
        "RunConfig: tabular agents have a built-in estimate update; avg_reward_rule "
        "applies to DQN variants");
  }
  if (agent == AgentVariant::tabular_differential_q) {
    if (target != TargetKind::differential) {
      throw ConfigError("RunConfig: tabular_differential_q needs differential mode");
    }
    if (!continuing_env) {
      throw ConfigError("RunConfig: differential agents need a continuing environment");
    }
  }
  if (is_dqn_variant(agent)) {
    if (target == TargetKind::discounted && avg_reward_rule != AvgRewardRule::none) {
      throw ConfigError("RunConfig: discounted DQN keeps no average-reward estimate");
    }
    if (target != TargetKind::discounted) {
      if (avg_reward_rule == AvgRewardRule::none) {
        throw ConfigError("RunConfig: differential/centered DQN needs an update rule");
      }
      if (!continuing_env) {
        throw ConfigError("RunConfig: differential/centered DQN needs a continuing environment");
      }
    }
    if (target == TargetKind::differential && agent_config.gamma != 1.0) {
      throw ConfigError("RunConfig: differential targets require gamma = 1");
    }
  }
  if (experiment == ExperimentKind::avg_reward_estimate) {
    bool has_estimate = agent == AgentVariant::tabular_differential_q ||
                        (is_dqn_variant(agent) && target != TargetKind::discounted);
    if (!has_estimate) {
      throw ConfigError("RunConfig: avg_reward_estimate needs an average-reward agent");
    }
    if (initial_avg_rewards.empty()) {
      throw ConfigError("RunConfig: avg_reward_estimate needs initial guesses");
    }
  }
}

std::vector<double> RunMetrics::column(std::optional<double> MetricRow::* field) const {
  std::vector<double> out;
  for (const MetricRow& row : rows) {
    if ((row.*field).has_value()) out.push_back(*(row.*field));
  }
  return out;
}

RunMetrics run_single(const RunConfig& config, std::uint64_t seed) {
  config.validate();
  SplitMix64 rng(derive_stream_seed(config.master_seed, seed));
  switch (config.agent) {
    case AgentVariant::tabular_q:
    case AgentVariant::tabular_differential_q:
      return run_tabular(config, seed, rng);
    case AgentVariant::linear_dqn:
    case AgentVariant::mlp_dqn:
      return run_dqn(config, seed, rng);
    case AgentVariant::a2c_linear:
    case AgentVariant::a2c_mlp:
      return run_a2c(config, seed, rng);
  }
  throw std::logic_error("unreachable");
}

std::vector<RunMetrics> run_all_seeds(const RunConfig& config) {
  std::vector<RunMetrics> runs;
  runs.reserve(config.seeds.size());
  for (std::uint64_t seed : config.seeds) runs.push_back(run_single(config, seed));
  return runs;
}

namespace {

std::string rbar_label(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", value);
  return buf;
}

std::optional<double> MetricRow::* chart_column(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::td_divergence:
      return &MetricRow::abs_gap;
    case ExperimentKind::avg_reward_estimate:
      return &MetricRow::avg_reward;
    case ExperimentKind::performance:
      return &MetricRow::episode_return;
  }
  throw std::logic_error("unreachable");
}

}  // namespace

ExperimentOutput run_experiment(const RunConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.output_dir);

  std::vector<double> guesses{config.initial_avg_reward};
  bool sweep = config.experiment == ExperimentKind::avg_reward_estimate;
  if (sweep) guesses = config.initial_avg_rewards;

  ExperimentOutput output;
  std::string base = experiment_token(config.experiment) + "_" + agent_token(config.agent);
  for (double guess : guesses) {
    RunConfig run_cfg = config;
    run_cfg.initial_avg_reward = guess;
    std::vector<RunMetrics> runs = run_all_seeds(run_cfg);

    std::string name = base;
    if (sweep) name += "_rbar0_" + rbar_label(guess);
    std::string csv_path = config.output_dir + "/" + name + ".csv";
    std::string svg_path = config.output_dir + "/" + name + ".svg";
    emit_csv(runs, csv_path);
    int window = config.experiment == ExperimentKind::td_divergence ? config.metric_window : 1;
    emit_svg(runs, chart_column(config.experiment), window, name, svg_path);
    output.csv_paths.push_back(csv_path);
    output.svg_paths.push_back(svg_path);
  }
  return output;
}

std::vector<double> rolling_stats(std::span<const double> series, int window) {
  if (window < 1) throw std::invalid_argument("rolling_stats: window must be >= 1");
  std::vector<double> out;
  out.reserve(series.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    acc += series[i];
    if (i >= static_cast<std::size_t>(window)) acc -= series[i - static_cast<std::size_t>(window)];
    std::size_t n = std::min<std::size_t>(i + 1, static_cast<std::size_t>(window));
    out.push_back(acc / static_cast<double>(n));
  }
  return out;
}

CiResult confidence_interval(const std::vector<std::vector<double>>& values_per_seed,
                             double level) {
  if (values_per_seed.empty()) {
    throw std::invalid_argument("confidence_interval: no series");
  }
  std::size_t n = values_per_seed.size();
  std::size_t len = values_per_seed.front().size();
  for (const auto& series : values_per_seed) {
    if (series.size() != len) {
      throw std::invalid_argument("confidence_interval: unequal series lengths");
    }
  }
  CiResult result;
  result.mean.resize(len);
  result.half_width.assign(len, 0.0);
  if (n == 1) {
    result.single_seed_warning = true;
    result.mean = values_per_seed.front();
    return result;
  }
  boost::math::students_t dist(static_cast<double>(n - 1));
  double t_crit = boost::math::quantile(dist, 0.5 + level / 2.0);
  for (std::size_t i = 0; i < len; ++i) {
    double mean = 0.0;
    for (const auto& series : values_per_seed) mean += series[i];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const auto& series : values_per_seed) {
      var += (series[i] - mean) * (series[i] - mean);
    }
    var /= static_cast<double>(n - 1);
    result.mean[i] = mean;
    result.half_width[i] = t_crit * std::sqrt(var / static_cast<double>(n));
  }
  return result;
}

std::string experiment_token(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::td_divergence: return "td_divergence";
    case ExperimentKind::avg_reward_estimate: return "avg_reward_estimate";
    case ExperimentKind::performance: return "performance";
  }
  throw std::logic_error("unreachable");
}

std::string agent_token(AgentVariant variant) {
  switch (variant) {
    case AgentVariant::tabular_q: return "tabular_q";
    case AgentVariant::tabular_differential_q: return "tabular_differential_q";
    case AgentVariant::linear_dqn: return "linear_dqn";
    case AgentVariant::mlp_dqn: return "mlp_dqn";
    case AgentVariant::a2c_linear: return "a2c_linear";
    case AgentVariant::a2c_mlp: return "a2c_mlp";
  }
  throw std::logic_error("unreachable");
}

}  // namespace tdlab
