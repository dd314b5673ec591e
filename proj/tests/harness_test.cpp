#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tdlab/config.hpp"
#include "tdlab/harness.hpp"

using namespace tdlab;

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("tdlab_test_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

RunConfig small_tabular_config() {
  RunConfig config;
  config.experiment = ExperimentKind::td_divergence;
  config.agent = AgentVariant::tabular_q;
  config.env.kind = EnvKind::random_mdp;
  config.env.mdp_seed = 5;
  config.env.num_states = 4;
  config.env.num_actions = 2;
  config.agent_config.alpha = 0.1;
  config.seeds = {1, 2};
  config.total_steps = 500;
  return config;
}

}  // namespace

TEST_CASE("splitmix64 matches the reference stream") {
  SplitMix64 g(0);
  CHECK(g.next() == 0xe220a8397b1dcdafull);
  CHECK(g.next() == 0x6e789e6aa1b965f4ull);
  CHECK(g.next() == 0x06c45d188009454full);
  SplitMix64 g42(42);
  CHECK(g42.next() == 0xbdd732262feb6e95ull);
}

TEST_CASE("uniform01 lies in the half-open unit interval") {
  SplitMix64 g(9);
  for (int i = 0; i < 10000; ++i) {
    double u = g.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("gaussian draws have roughly unit variance") {
  SplitMix64 g(10);
  double sum = 0.0, sum_sq = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    double z = g.gaussian();
    sum += z;
    sum_sq += z * z;
  }
  CHECK(std::fabs(sum / n) < 0.02);
  CHECK(std::fabs(sum_sq / n - 1.0) < 0.03);
}

TEST_CASE("rolling stats: window one is the identity") {
  std::vector<double> xs{3.0, 1.0, 4.0, 1.0, 5.0};
  CHECK(rolling_stats(xs, 1) == xs);
}

TEST_CASE("rolling stats: constant series stays constant") {
  std::vector<double> xs(100, 2.5);
  for (double v : rolling_stats(xs, 7)) CHECK(v == doctest::Approx(2.5));
}

TEST_CASE("rolling stats: trailing window with prefix fill") {
  std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  std::vector<double> want{1.0, 1.5, 2.5, 3.5};
  auto got = rolling_stats(xs, 2);
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]));
}

TEST_CASE("confidence interval: identical series collapse to zero width") {
  std::vector<std::vector<double>> m{{1.0, 2.0}, {1.0, 2.0}, {1.0, 2.0}};
  CiResult ci = confidence_interval(m);
  CHECK(ci.mean[0] == doctest::Approx(1.0));
  CHECK(ci.half_width[0] == doctest::Approx(0.0));
  CHECK(!ci.single_seed_warning);
}

TEST_CASE("confidence interval: two seeds at (0, 2) use the df=1 t value") {
  std::vector<std::vector<double>> m{{0.0}, {2.0}};
  CiResult ci = confidence_interval(m);
  CHECK(ci.mean[0] == doctest::Approx(1.0));
  // stderr is 1, so the half width is the 0.975 t quantile with 1 dof.
  CHECK(ci.half_width[0] == doctest::Approx(12.706204736174694).epsilon(1e-9));
}

TEST_CASE("confidence interval width shrinks like one over sqrt n") {
  SplitMix64 rng(11);
  auto width_for = [&](int n) {
    std::vector<std::vector<double>> m;
    for (int i = 0; i < n; ++i) m.push_back({rng.gaussian()});
    return confidence_interval(m).half_width[0];
  };
  double w4 = 0.0, w16 = 0.0, w64 = 0.0;
  const int reps = 300;
  for (int r = 0; r < reps; ++r) {
    w4 += width_for(4);
    w16 += width_for(16);
    w64 += width_for(64);
  }
  w4 /= reps;
  w16 /= reps;
  w64 /= reps;
  // Ratios track 1/sqrt(n) loosely (t quantiles shrink too); demand the
  // qualitative halving within 35%.
  CHECK(w16 / w4 < 0.65);
  CHECK(w64 / w16 < 0.65);
}

TEST_CASE("single seed yields zero width and a warning") {
  std::vector<std::vector<double>> m{{1.0, 3.0}};
  CiResult ci = confidence_interval(m);
  CHECK(ci.single_seed_warning);
  CHECK(ci.half_width[0] == 0.0);
  CHECK(ci.mean[1] == doctest::Approx(3.0));
}

TEST_CASE("csv header is the exact schema string") {
  CHECK(std::string(kCsvHeader) ==
        "step,delta_e_mean,delta_i_mean,abs_gap,r_bar,episode_return,seed");
}

TEST_CASE("csv emission round-trips and keeps empty optionals empty") {
  TempDir tmp;
  RunMetrics run;
  run.seed = 7;
  MetricRow a;
  a.step = 0;
  a.delta_e_mean = 1.0 / 3.0;
  a.delta_i_mean = -2.0 / 7.0;
  a.abs_gap = std::fabs(*a.delta_e_mean - *a.delta_i_mean);
  MetricRow b;
  b.step = 1;
  b.avg_reward = 0.1234567890123456789;
  b.episode_return = -200.25;
  run.rows = {a, b};

  std::string path = (tmp.path / "roundtrip.csv").string();
  emit_csv({run}, path);

  std::string text = read_file(path);
  auto lines = [&] {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
  }();
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == kCsvHeader);
  // Second data row has empty delta fields, not zeros.
  CHECK(lines[2].substr(0, 5) == "1,,,,");

  ParsedCsv parsed = parse_metrics_csv(path);
  REQUIRE(parsed.rows.size() == 2);
  CHECK(parsed.seeds[0] == 7);
  CHECK(parsed.rows[0].delta_e_mean == a.delta_e_mean);
  CHECK(parsed.rows[0].delta_i_mean == a.delta_i_mean);
  CHECK(parsed.rows[0].abs_gap == a.abs_gap);
  CHECK(!parsed.rows[0].avg_reward.has_value());
  CHECK(parsed.rows[1].avg_reward == b.avg_reward);
  CHECK(parsed.rows[1].episode_return == b.episode_return);
  CHECK(!parsed.rows[1].delta_e_mean.has_value());
}

TEST_CASE("identical configs emit byte-identical csv files") {
  TempDir tmp;
  RunConfig config = small_tabular_config();
  config.output_dir = (tmp.path / "x").string();
  ExperimentOutput first = run_experiment(config);
  config.output_dir = (tmp.path / "y").string();
  ExperimentOutput second = run_experiment(config);
  REQUIRE(first.csv_paths.size() == 1);
  CHECK(read_file(first.csv_paths[0]) == read_file(second.csv_paths[0]));
}

TEST_CASE("tabular divergence run records a zero gap column") {
  RunConfig config = small_tabular_config();
  for (const RunMetrics& run : run_all_seeds(config)) {
    for (const MetricRow& row : run.rows) {
      REQUIRE(row.abs_gap.has_value());
      CHECK(*row.abs_gap <= 1e-10);
    }
  }
}

TEST_CASE("avg_reward_estimate emits one file per initial guess") {
  TempDir tmp;
  RunConfig config;
  config.experiment = ExperimentKind::avg_reward_estimate;
  config.agent = AgentVariant::tabular_differential_q;
  config.target = TargetKind::differential;
  config.env.kind = EnvKind::random_mdp;
  config.env.num_states = 4;
  config.agent_config.alpha = 0.05;
  config.agent_config.gamma = 1.0;
  config.seeds = {1};
  config.total_steps = 400;
  config.initial_avg_rewards = {-0.25, 0.0, 0.25};
  config.output_dir = (tmp.path / "sweep").string();
  ExperimentOutput out = run_experiment(config);
  REQUIRE(out.csv_paths.size() == 3);
  for (const std::string& p : out.csv_paths) CHECK(fs::exists(p));
  CHECK(out.csv_paths[0].find("rbar0_-0.25") != std::string::npos);
  CHECK(out.csv_paths[1].find("rbar0_0") != std::string::npos);
  CHECK(out.csv_paths[2].find("rbar0_0.25") != std::string::npos);
  // The r_bar column starts at each guess.
  for (std::size_t i = 0; i < 3; ++i) {
    ParsedCsv parsed = parse_metrics_csv(out.csv_paths[i]);
    REQUIRE(parsed.rows.front().avg_reward.has_value());
  }
}

TEST_CASE("svg emission writes a band and mean line for aligned seeds") {
  TempDir tmp;
  RunConfig config = small_tabular_config();
  config.output_dir = (tmp.path / "svg").string();
  ExperimentOutput out = run_experiment(config);
  REQUIRE(out.svg_paths.size() == 1);
  std::string svg = read_file(out.svg_paths[0]);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<polygon") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
}

TEST_CASE("config parsing builds a full run configuration") {
  std::string text = R"(
# comment
[run]
experiment = td_divergence
agent = mlp_dqn
seeds = 3, 5, 8
master_seed = 77
total_steps = 1234
metric_window = 100
output_dir = results
[env]
kind = pendulum_discrete
max_episode_steps = 200
[agent]
alpha = 2e-4
gamma = 0.99
batch_size = 32
optimizer = sgd
loss = mean_square
mode = discounted
epsilon = 0.1
[features]
normalize = true
num_tilings = 32
tiles_per_dim = 8
[network]
hidden_dims = 32, 32
)";
  RunConfig config = run_config_from_ini(IniFile::parse_string(text));
  CHECK(config.experiment == ExperimentKind::td_divergence);
  CHECK(config.agent == AgentVariant::mlp_dqn);
  CHECK(config.seeds == std::vector<std::uint64_t>{3, 5, 8});
  CHECK(config.master_seed == 77);
  CHECK(config.total_steps == 1234);
  CHECK(config.metric_window == 100);
  CHECK(config.output_dir == "results");
  CHECK(config.env.kind == EnvKind::pendulum_discrete);
  CHECK(config.agent_config.alpha == 2e-4);
  CHECK(config.agent_config.loss == LossKind::mean_square_value);
  CHECK(config.hidden_dims == std::vector<int>{32, 32});
  config.validate();
}

TEST_CASE("config errors are diagnosed before stepping") {
  CHECK_THROWS_AS(run_config_from_ini(IniFile::parse_string("[run]\nexperiment = what\n")),
                  ConfigError);
  CHECK_THROWS_AS(run_config_from_ini(IniFile::parse_string("[run]\nbogus_key = 1\n")),
                  ConfigError);
  CHECK_THROWS_AS(IniFile::parse_string("key_without_section = 1\n"), ConfigError);

  // Differential DQN on the episodic pendulum: rejected.
  RunConfig config;
  config.agent = AgentVariant::mlp_dqn;
  config.target = TargetKind::differential;
  config.avg_reward_rule = AvgRewardRule::implicit_td;
  config.env.kind = EnvKind::pendulum_discrete;
  config.env.max_episode_steps = 200;
  config.agent_config.gamma = 1.0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config.env.max_episode_steps = 0;
  config.validate();  // continuing: fine

  // A2C needs the continuous pendulum.
  RunConfig a2c;
  a2c.agent = AgentVariant::a2c_mlp;
  a2c.env.kind = EnvKind::random_mdp;
  CHECK_THROWS_AS(a2c.validate(), ConfigError);

  // Differential targets with a discount: rejected.
  RunConfig diff;
  diff.agent = AgentVariant::mlp_dqn;
  diff.target = TargetKind::differential;
  diff.avg_reward_rule = AvgRewardRule::explicit_td;
  diff.env.kind = EnvKind::random_mdp;
  diff.agent_config.gamma = 0.99;
  CHECK_THROWS_AS(diff.validate(), ConfigError);
}

TEST_CASE("sweep grids expand to the cartesian product") {
  IniFile grid = IniFile::parse_string("[grid]\nagent.alpha = 0.1, 0.2\nagent.eta = 1, 2, 3\n");
  auto combos = sweep_grid(grid);
  CHECK(combos.size() == 6);
  CHECK(combos[0][0].first == "agent.alpha");
  CHECK(combos[0][0].second == "0.1");
  CHECK(combos[0][1].second == "1");
  CHECK(combos[5][0].second == "0.2");
  CHECK(combos[5][1].second == "3");
}

TEST_CASE("reward-centering DQN runs end to end and tracks an estimate") {
  RunConfig config;
  config.experiment = ExperimentKind::avg_reward_estimate;
  config.agent = AgentVariant::mlp_dqn;
  config.target = TargetKind::centered;
  config.avg_reward_rule = AvgRewardRule::implicit_td;
  config.env.kind = EnvKind::random_mdp;
  config.env.num_states = 5;
  config.agent_config.gamma = 0.99;  // centered keeps its discount
  config.agent_config.alpha = 1e-3;
  config.agent_config.optimizer = OptimizerKind::adam;
  config.agent_config.loss = LossKind::smooth_l1;
  config.seeds = {1};
  config.total_steps = 1200;
  config.validate();
  RunMetrics run = run_single(config, 1);
  CHECK(run.has_estimator);
  int with_estimate = 0;
  for (const MetricRow& row : run.rows) {
    if (row.avg_reward.has_value()) {
      CHECK(std::isfinite(*row.avg_reward));
      ++with_estimate;
    }
  }
  CHECK(with_estimate == 1200);
  CHECK(std::isfinite(run.final_avg_reward));
}

TEST_CASE("ring and swap environments drive agents through the harness") {
  for (EnvKind kind : {EnvKind::ring_mdp, EnvKind::two_state_swap}) {
    RunConfig config;
    config.experiment = ExperimentKind::td_divergence;
    config.agent = AgentVariant::tabular_differential_q;
    config.target = TargetKind::differential;
    config.env.kind = kind;
    config.env.num_states = 6;
    config.agent_config.alpha = 0.1;
    config.agent_config.eta = 0.5;
    config.agent_config.gamma = 1.0;
    config.seeds = {1};
    config.total_steps = 3000;
    RunMetrics run = run_single(config, 1);
    REQUIRE(run.has_estimator);
    // Both chains have average rewards in [0, 1]; the estimate should head
    // into that range from zero.
    CHECK(run.final_avg_reward > 0.0);
    CHECK(run.final_avg_reward < 1.0);
  }
}

TEST_CASE("seed streams differ across runs but replay exactly") {
  RunConfig config = small_tabular_config();
  RunMetrics a1 = run_single(config, 1);
  RunMetrics a2 = run_single(config, 1);
  RunMetrics b = run_single(config, 2);
  REQUIRE(a1.rows.size() == a2.rows.size());
  bool any_diff = false;
  for (std::size_t i = 0; i < a1.rows.size(); ++i) {
    CHECK(a1.rows[i].delta_e_mean == a2.rows[i].delta_e_mean);
    if (a1.rows[i].delta_e_mean != b.rows[i].delta_e_mean) any_diff = true;
  }
  CHECK(any_diff);
}
