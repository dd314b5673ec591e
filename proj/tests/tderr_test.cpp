#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "tdlab/agents.hpp"
#include "tdlab/dqn.hpp"
#include "tdlab/mdp.hpp"
#include "tdlab/oracle.hpp"
#include "tdlab/pendulum.hpp"
#include "tdlab/policy.hpp"
#include "tdlab/td_errors.hpp"

using namespace tdlab;

namespace {

Observation discrete_obs(int id) {
  Observation o;
  o.state_id = id;
  return o;
}

Transition make_transition(const Observation& s, int a, double r, const Observation& s2,
                           bool terminal = false) {
  Transition t;
  t.state = s;
  t.action = a;
  t.reward = r;
  t.next_state = s2;
  t.terminal = terminal;
  return t;
}

TileCodingSpec pendulum_tiles(bool normalize) {
  TileCodingSpec spec;
  spec.num_tilings = 32;
  spec.tiles_per_dim = 8;
  spec.state_low = {-1.0, -1.0, -8.0};
  spec.state_high = {1.0, 1.0, 8.0};
  spec.num_actions = 3;
  spec.normalize = normalize;
  return spec;
}

AgentConfig linear_sgd_config(int batch_size) {
  AgentConfig cfg;
  cfg.alpha = 2e-4;
  cfg.gamma = 0.99;
  cfg.batch_size = batch_size;
  cfg.optimizer = OptimizerKind::sgd;
  cfg.loss = LossKind::mean_square_value;
  return cfg;
}

// Random pendulum transitions for feature-space tests.
Batch pendulum_batch(int size, SplitMix64& rng) {
  Batch batch;
  DiscretePendulumEnv env;
  Observation obs = env.reset(rng);
  for (int i = 0; i < size; ++i) {
    int action = rng.uniform_int(3);
    StepResult r = env.step(action, rng);
    batch.push_back(make_transition(obs, action, r.reward, r.next_observation));
    obs = r.next_observation;
    if (r.truncated) obs = env.reset(rng);
  }
  return batch;
}

void randomize_weights(TrainableQ& q, SplitMix64& rng, double scale) {
  std::vector<double> w = q.params();
  for (double& v : w) v = rng.uniform(-scale, scale);
  q.set_params(std::move(w));
}

// Single sigmoid unit over tile features: q(s, a) = sigmoid(w . x(s, a)).
// Test-local value function used to observe nonlinear divergence.
class SigmoidQ : public TrainableQ {
 public:
  explicit SigmoidQ(TileCodingSpec spec)
      : spec_(std::move(spec)),
        weights_(static_cast<std::size_t>(spec_.feature_dim()), 0.0) {}

  int num_actions() const override { return spec_.num_actions; }
  double evaluate(const Observation& obs, int action) const override {
    return evaluate_at(weights_, obs, action);
  }
  double evaluate_at(const ParamSnapshot& snap, const Observation& obs,
                     int action) const override {
    FeatureVector x = tile_encode(spec_, obs.vec, action);
    double z = 0.0;
    for (std::size_t i = 0; i < x.indices.size(); ++i) {
      z += snap[static_cast<std::size_t>(x.indices[i])] * x.values[i];
    }
    return 1.0 / (1.0 + std::exp(-z));
  }
  const std::vector<double>& params() const override { return weights_; }
  void set_params(std::vector<double> values) override { weights_ = std::move(values); }
  void accumulate_value_gradient(const Observation& obs, int action, double coeff,
                                 std::vector<double>& grad) const override {
    FeatureVector x = tile_encode(spec_, obs.vec, action);
    double q = evaluate(obs, action);
    double slope = q * (1.0 - q);
    for (std::size_t i = 0; i < x.indices.size(); ++i) {
      grad[static_cast<std::size_t>(x.indices[i])] += coeff * slope * x.values[i];
    }
  }
  std::unique_ptr<TrainableQ> clone() const override {
    return std::make_unique<SigmoidQ>(*this);
  }

 private:
  TileCodingSpec spec_;
  std::vector<double> weights_;
};

}  // namespace

TEST_CASE("explicit TD error, discounted arithmetic") {
  TabularQ q(2, 1);
  q.at(0, 0) = 0.5;
  q.at(1, 0) = 2.0;
  Batch batch{make_transition(discrete_obs(0), 0, 1.0, discrete_obs(1))};
  auto deltas = explicit_td(batch, q, q, TdMode::discounted(0.99));
  CHECK(deltas[0] == doctest::Approx(2.48).epsilon(1e-15));
}

TEST_CASE("explicit TD error, differential arithmetic") {
  TabularQ q(2, 1);
  Batch batch{make_transition(discrete_obs(0), 0, 1.0, discrete_obs(1))};
  auto deltas = explicit_td(batch, q, q, TdMode::differential(0.25));
  CHECK(deltas[0] == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("explicit TD error zeroes the bootstrap at terminals") {
  TabularQ q(2, 1);
  q.at(1, 0) = 100.0;
  Batch batch{make_transition(discrete_obs(0), 0, 1.0, discrete_obs(1), true)};
  auto deltas = explicit_td(batch, q, q, TdMode::discounted(0.99));
  CHECK(deltas[0] == doctest::Approx(1.0));
  auto centered = explicit_td(batch, q, q, TdMode::centered(0.99, 0.5));
  CHECK(centered[0] == doctest::Approx(0.5));
}

TEST_CASE("differential mode rejects terminal transitions") {
  TabularQ q(2, 1);
  Batch batch{make_transition(discrete_obs(0), 0, 1.0, discrete_obs(1), true)};
  CHECK_THROWS_AS(explicit_td(batch, q, q, TdMode::differential(0.0)), ConfigError);
}

TEST_CASE("explicit TD errors vanish at a Bellman fixed point of a deterministic MDP") {
  MdpSpec spec = make_ring_mdp(6);
  spec.gamma = 0.9;
  auto q_star = oracle::value_iteration(spec, 1e-12);
  TabularQ q(6, 2);
  q.set_params(q_star);
  SplitMix64 rng(1);
  Batch batch;
  int s = 0;
  for (int i = 0; i < 100; ++i) {
    int a = rng.uniform_int(2);
    StepResult r = mdp_step(spec, s, a, rng);
    batch.push_back(make_transition(discrete_obs(s), a, r.reward,
                                    discrete_obs(r.next_observation.state_id)));
    s = r.next_observation.state_id;
  }
  auto deltas = explicit_td(batch, q, q, TdMode::discounted(spec.gamma));
  for (double d : deltas) CHECK(std::fabs(d) <= 1e-9);
}

TEST_CASE("implicit TD error is zero when nothing changed") {
  TabularQ q(3, 2);
  Batch batch{make_transition(discrete_obs(1), 0, 1.0, discrete_obs(2))};
  auto snap = q.snapshot();
  auto deltas = implicit_td(batch, snap, snap, q, 0.1);
  CHECK(deltas[0] == 0.0);
}

TEST_CASE("implicit TD error recovers the tabular step") {
  TabularQ q(2, 1);
  q.at(0, 0) = 0.5;
  auto before = q.snapshot();
  q.at(0, 0) = 0.748;
  auto after = q.snapshot();
  Batch batch{make_transition(discrete_obs(0), 0, 1.0, discrete_obs(1))};
  auto deltas = implicit_td(batch, before, after, q, 0.1);
  CHECK(deltas[0] == doctest::Approx(2.48).epsilon(1e-12));
}

TEST_CASE("implicit TD error requires a positive alpha") {
  TabularQ q(2, 1);
  Batch batch{make_transition(discrete_obs(0), 0, 1.0, discrete_obs(1))};
  auto snap = q.snapshot();
  CHECK_THROWS_AS(implicit_td(batch, snap, snap, q, 0.0), std::invalid_argument);
}

TEST_CASE("TdReport means and gap are consistent") {
  TdReport r = make_td_report({1.0, 2.0, 3.0}, {0.5, 0.5, 0.5}, 0.1);
  CHECK(std::fabs(r.explicit_mean - 2.0) <= 1e-12);
  CHECK(std::fabs(r.implicit_mean - 0.5) <= 1e-12);
  CHECK(r.gap == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(r.alpha_used == 0.1);
}

TEST_CASE("tabular trajectories keep both TD errors identical") {
  // Lemma: in the tabular setting the two interpretations always agree.
  for (std::uint64_t seed : {11ull, 12ull}) {
    MdpSpec spec = generate_random_mdp(seed, 5, 3, true);
    SplitMix64 rng(seed * 97);
    MdpEnv env(spec);
    Observation obs = env.reset(rng);
    TabularQ q(5, 3);
    double worst = 0.0;
    for (int step = 0; step < 1000; ++step) {
      int a = epsilon_greedy_action(q, obs, 0.2, rng);
      StepResult r = env.step(a, rng);
      auto before = q.snapshot();
      auto result = tabular_q_update(
          q, make_transition(obs, a, r.reward, r.next_observation), 0.1, spec.gamma);
      auto after = q.snapshot();
      Batch batch{make_transition(obs, a, r.reward, r.next_observation)};
      double implicit = implicit_td(batch, before, after, q, 0.1)[0];
      worst = std::max(worst, std::fabs(result.delta_explicit - implicit));
      worst = std::max(worst, std::fabs(result.delta_explicit - result.delta_implicit));
      obs = r.next_observation;
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("linear single-sample SGD scales the TD error by the squared feature norm") {
  for (bool normalize : {true, false}) {
    LinearQ q = LinearQ::tile_coded(pendulum_tiles(normalize));
    auto target = q.clone();
    SplitMix64 rng(normalize ? 21 : 22);
    randomize_weights(q, rng, 0.1);
    target->set_params(q.params());
    AgentConfig cfg = linear_sgd_config(1);
    AvgRewardEstimator none;
    double norm_sq = normalize ? 1.0 : 32.0;
    Batch batch = pendulum_batch(100, rng);
    double worst = 0.0;
    for (const Transition& t : batch) {
      TdReport r = dqn_update_batch(q, *target, {t}, cfg, TargetKind::discounted, none);
      worst = std::max(worst,
                       std::fabs(r.implicit_mean - norm_sq * r.explicit_mean));
    }
    CHECK(worst <= (normalize ? 1e-10 : 1e-8));
  }
}

TEST_CASE("sign agreement is exact for linear single-sample updates") {
  LinearQ q = LinearQ::tile_coded(pendulum_tiles(false));
  auto target = q.clone();
  SplitMix64 rng(23);
  randomize_weights(q, rng, 0.05);
  target->set_params(q.params());
  AgentConfig cfg = linear_sgd_config(1);
  AvgRewardEstimator none;
  for (const Transition& t : pendulum_batch(200, rng)) {
    TdReport r = dqn_update_batch(q, *target, {t}, cfg, TargetKind::discounted, none);
    if (r.explicit_mean > 0.0) CHECK(r.implicit_mean > 0.0);
    if (r.explicit_mean < 0.0) CHECK(r.implicit_mean < 0.0);
  }
}

TEST_CASE("predict_implicit_linear closed forms") {
  // B = 1, unit feature: the prediction is the explicit error itself.
  FeatureVector unit;
  unit.dim = 2;
  unit.indices = {0};
  unit.values = {1.0};
  CHECK(predict_implicit_linear({unit}, {3.25}) == doctest::Approx(3.25));

  // B = 2 orthonormal: each gram mean is 1/2, prediction halves the mean.
  FeatureVector e1 = unit;
  FeatureVector e2;
  e2.dim = 2;
  e2.indices = {1};
  e2.values = {1.0};
  CHECK(predict_implicit_linear({e1, e2}, {1.0, 1.0}) == doctest::Approx(0.5));

  // B = 2 identical unit features: prediction equals the explicit mean.
  CHECK(predict_implicit_linear({e1, e1}, {2.0, 4.0}) == doctest::Approx(3.0));
}

TEST_CASE("orthonormal batch prediction matches an actual SGD update") {
  // Two one-hot features, explicit errors forced to (1, 1) by constructing
  // rewards against zero-initialized weights with gamma 0.
  LinearQ q = LinearQ::one_hot(2, 1);
  auto target = q.clone();
  AgentConfig cfg = linear_sgd_config(2);
  cfg.gamma = 0.0;
  cfg.alpha = 0.1;
  AvgRewardEstimator none;
  Batch batch{make_transition(discrete_obs(0), 0, 1.0, discrete_obs(1)),
              make_transition(discrete_obs(1), 0, 1.0, discrete_obs(0))};
  TdReport r = dqn_update_batch(q, *target, batch, cfg, TargetKind::discounted, none);
  CHECK(r.explicit_mean == doctest::Approx(1.0));
  CHECK(r.implicit_mean == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("batch equality condition classifications") {
  FeatureVector e1, e2;
  e1.dim = e2.dim = 2;
  e1.indices = {0};
  e1.values = {1.0};
  e2.indices = {1};
  e2.values = {1.0};

  auto single = batch_equality_condition({e1});
  CHECK(single.satisfied);
  CHECK(single.per_sample_gram_means[0] == doctest::Approx(1.0));

  auto ortho = batch_equality_condition({e1, e2});
  CHECK(!ortho.satisfied);
  CHECK(ortho.per_sample_gram_means[0] == doctest::Approx(0.5));
  CHECK(ortho.per_sample_gram_means[1] == doctest::Approx(0.5));

  auto identical = batch_equality_condition({e1, e1, e1});
  CHECK(identical.satisfied);
  for (double m : identical.per_sample_gram_means) CHECK(m == doctest::Approx(1.0));
}

TEST_CASE("batch-mean implicit TD error matches the Gram prediction") {
  SplitMix64 rng(31);
  for (int batch_size : {2, 4, 8, 32}) {
    LinearQ q = LinearQ::tile_coded(pendulum_tiles(true));
    auto target = q.clone();
    randomize_weights(q, rng, 0.1);
    target->set_params(q.params());
    AgentConfig cfg = linear_sgd_config(batch_size);
    AvgRewardEstimator none;
    for (int trial = 0; trial < 25; ++trial) {
      Batch batch = pendulum_batch(batch_size, rng);
      std::vector<FeatureVector> features;
      for (const Transition& t : batch) features.push_back(q.features(t.state, t.action));
      TdReport r = dqn_update_batch(q, *target, batch, cfg, TargetKind::discounted, none);
      double predicted = predict_implicit_linear(features, r.explicit_per_sample);
      CHECK(std::fabs(r.implicit_mean - predicted) <= 1e-8);
    }
  }
}

TEST_CASE("a single sigmoid unit makes the two TD errors diverge while learning") {
  TileCodingSpec tiles = pendulum_tiles(true);
  SigmoidQ q(tiles);
  auto target = q.clone();
  SplitMix64 rng(41);
  randomize_weights(q, rng, 0.5);
  target->set_params(q.params());
  AgentConfig cfg;
  cfg.alpha = 0.05;
  cfg.gamma = 0.9;
  cfg.batch_size = 1;
  cfg.optimizer = OptimizerKind::sgd;
  cfg.loss = LossKind::mean_square_value;
  AvgRewardEstimator none;
  DiscretePendulumEnv env;
  Observation obs = env.reset(rng);
  int divergent = 0;
  const int steps = 400;
  for (int i = 0; i < steps; ++i) {
    int a = rng.uniform_int(3);
    StepResult sr = env.step(a, rng);
    // Bounded synthetic reward keeps the sigmoid target reachable.
    double reward = 0.5 * (1.0 + sr.next_observation.vec[0]) * 0.1;
    Batch batch{make_transition(obs, a, reward, sr.next_observation)};
    TdReport r = dqn_update_batch(q, *target, batch, cfg, TargetKind::discounted, none);
    if (std::fabs(r.gap) > 1e-12) divergent += 1;
    target->set_params(q.params());
    obs = sr.next_observation;
    if (sr.truncated) obs = env.reset(rng);
  }
  CHECK(divergent > steps / 2);
}

TEST_CASE("epsilon ledger reconstructs explicit-rule updates") {
  EpsilonLedger ledger;
  SplitMix64 rng(51);
  double tracked = 0.2;
  double initial = tracked;
  double eta = 0.5, alpha = 0.05;
  for (int i = 0; i < 1000; ++i) {
    double implicit = rng.gaussian();
    double gap = 0.3 * rng.gaussian();
    tracked += eta * alpha * (implicit + gap);
    ledger.record(alpha, eta, gap, implicit);
  }
  CHECK(std::fabs(ledger.reconstruct(initial) - tracked) <= 1e-10);
  CHECK(ledger.updates == 1000);
}

TEST_CASE("zero-gap ledger reduces to the implicit trajectory") {
  EpsilonLedger ledger;
  double implicit_only = 0.0;
  for (int i = 0; i < 100; ++i) {
    double implicit = 0.01 * i;
    implicit_only += 1.0 * 0.1 * implicit;
    ledger.record(0.1, 1.0, 0.0, implicit);
  }
  CHECK(ledger.gap_sum == 0.0);
  CHECK(ledger.reconstruct(0.0) == doctest::Approx(implicit_only).epsilon(1e-12));
}

TEST_CASE("single ledger step is the one-step identity") {
  EpsilonLedger ledger;
  double r0 = 0.1, eta = 0.5, alpha = 0.2, implicit = 1.5, gap = 0.25;
  ledger.record(alpha, eta, gap, implicit);
  double explicit_step = r0 + eta * alpha * (implicit + gap);
  CHECK(ledger.reconstruct(r0) == doctest::Approx(explicit_step).epsilon(1e-15));
}
