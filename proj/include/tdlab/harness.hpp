#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdlab/a2c.hpp"
#include "tdlab/agents.hpp"
#include "tdlab/td_errors.hpp"

namespace tdlab {

enum class ExperimentKind { td_divergence, avg_reward_estimate, performance };

enum class AgentVariant {
  tabular_q,
  tabular_differential_q,
  linear_dqn,
  mlp_dqn,
  a2c_linear,
  a2c_mlp
};

enum class EnvKind { random_mdp, ring_mdp, two_state_swap, pendulum, pendulum_discrete };

struct EnvSettings {
  EnvKind kind = EnvKind::pendulum_discrete;
  std::uint64_t mdp_seed = 1;
  int num_states = 10;
  int num_actions = 2;
  bool ergodic = true;
  /// Pendulum episode length; 0 makes the task continuing.
  int max_episode_steps = 200;
};

struct FeatureSettings {
  bool normalize = true;
  int num_tilings = 32;
  int tiles_per_dim = 8;
  /// Grid resolution per dimension when a tabular agent drives the pendulum.
  int tabular_bins_per_dim = 16;
};

struct RunConfig {
  ExperimentKind experiment = ExperimentKind::td_divergence;
  AgentVariant agent = AgentVariant::mlp_dqn;
  TargetKind target = TargetKind::discounted;
  AvgRewardRule avg_reward_rule = AvgRewardRule::none;
  AdvantageRule advantage_rule = AdvantageRule::implicit_td;
  EnvSettings env;
  FeatureSettings features;
  AgentConfig agent_config;
  std::vector<int> hidden_dims{32, 32};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4};
  std::uint64_t master_seed = 0;
  long total_steps = 20000;
  int metric_window = 500;
  std::string output_dir = "out";
  double initial_avg_reward = 0.0;
  /// avg_reward_estimate sweeps these initial guesses, one output per value.
  std::vector<double> initial_avg_rewards{-0.25, 0.0, 0.25};
  double max_action = 2.0;

  /// Rejects invalid agent/environment/mode combinations before stepping.
  void validate() const;
};

struct MetricRow {
  long step = 0;
  std::optional<double> delta_e_mean;
  std::optional<double> delta_i_mean;
  std::optional<double> abs_gap;
  std::optional<double> avg_reward;
  std::optional<double> episode_return;
};

struct RunMetrics {
  std::uint64_t seed = 0;
  std::vector<MetricRow> rows;
  bool has_estimator = false;
  double initial_avg_reward = 0.0;
  double final_avg_reward = 0.0;
  EpsilonLedger ledger;
  long sign_agree_count = 0;
  long sign_total = 0;

  std::vector<double> column(std::optional<double> MetricRow::* field) const;
};

/// One seed, one run: fresh stream, environment, and agent.
RunMetrics run_single(const RunConfig& config, std::uint64_t seed);

/// All configured seeds in order.
std::vector<RunMetrics> run_all_seeds(const RunConfig& config);

struct ExperimentOutput {
  std::vector<std::string> csv_paths;
  std::vector<std::string> svg_paths;
};

/// Full experiment: runs every seed (and every initial average-reward guess
/// for avg_reward_estimate), emits CSV and SVG files under output_dir.
ExperimentOutput run_experiment(const RunConfig& config);

/// Trailing-window mean; the first window-1 entries average the prefix.
std::vector<double> rolling_stats(std::span<const double> series, int window);

struct CiResult {
  std::vector<double> mean;
  std::vector<double> half_width;
  bool single_seed_warning = false;
};

/// Per-index mean and t-interval half width across rows of `values_per_seed`
/// (one row per seed, equal lengths).
CiResult confidence_interval(const std::vector<std::vector<double>>& values_per_seed,
                             double level = 0.95);

// --- emission (emit.cpp) ---

extern const char* const kCsvHeader;  // step,delta_e_mean,...,seed

std::string format_double(double value);  // shortest 17-significant-digit form

void emit_csv(const std::vector<RunMetrics>& runs, const std::string& path);

/// Line chart of one metric column: per-seed series smoothed by `window`,
/// with a mean line and 95% CI band where all seeds align.
void emit_svg(const std::vector<RunMetrics>& runs,
              std::optional<double> MetricRow::* field, int window,
              const std::string& title, const std::string& path);

struct ParsedCsv {
  std::vector<std::uint64_t> seeds;       // per data row
  std::vector<MetricRow> rows;            // per data row
};

ParsedCsv parse_metrics_csv(const std::string& path);

// Deterministic file-name fragments for experiment outputs.
std::string experiment_token(ExperimentKind kind);
std::string agent_token(AgentVariant variant);

}  // namespace tdlab
