#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tdlab/mdp.hpp"
#include "tdlab/oracle.hpp"

using namespace tdlab;

namespace {

MdpSpec single_state_mdp(double reward, double gamma) {
  MdpSpec spec;
  spec.num_states = 1;
  spec.num_actions = 1;
  spec.rewards = {reward};
  spec.transition = {1.0};
  spec.gamma = gamma;
  spec.start_distribution = {1.0};
  return spec;
}

}  // namespace

TEST_CASE("value iteration on a self-loop is the geometric series") {
  MdpSpec spec = single_state_mdp(1.0, 0.5);
  auto q = oracle::value_iteration(spec, 1e-12);
  CHECK(q[0] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("gamma zero reduces Q* to expected immediate reward") {
  MdpSpec spec = generate_random_mdp(17, 4, 3, true);
  spec.gamma = 0.0;
  auto q = oracle::value_iteration(spec, 1e-12);
  for (int s = 0; s < 4; ++s) {
    for (int a = 0; a < 3; ++a) {
      CHECK(q[static_cast<std::size_t>(s) * 3 + a] ==
            doctest::Approx(spec.expected_reward(s, a)).epsilon(1e-10));
    }
  }
}

TEST_CASE("value iteration refuses gamma = 1") {
  MdpSpec spec = single_state_mdp(1.0, 1.0);
  CHECK_THROWS_AS(oracle::value_iteration(spec, 1e-9), std::invalid_argument);
}

TEST_CASE("Q* satisfies the Bellman equations on random MDPs") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
    MdpSpec spec = generate_random_mdp(seed, 5, 3, true);
    spec.gamma = 0.9;
    auto q = oracle::value_iteration(spec, 1e-10);
    CHECK(oracle::bellman_residual(spec, q) < 1e-9);
  }
}

TEST_CASE("swap chain average reward is one half under any policy") {
  MdpSpec spec = make_two_state_swap();
  std::vector<double> det{1.0, 0.0, 0.0, 1.0};
  CHECK(oracle::average_reward_oracle(spec, det) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("uniform policy on a doubly stochastic chain averages the rewards plainly") {
  // Two states, two actions, every transition equally likely in both
  // directions: the column sums of the chain are 1, so the stationary
  // distribution is uniform.
  MdpSpec spec;
  spec.num_states = 2;
  spec.num_actions = 2;
  spec.rewards = {0.0, 1.0};
  int len = spec.row_length();
  spec.transition.assign(static_cast<std::size_t>(2) * 2 * len, 0.0);
  auto set_row = [&](int s, int a, double p_next0, int r0, double p_next1, int r1) {
    std::size_t off = (static_cast<std::size_t>(s) * 2 + a) * len;
    spec.transition[off + 0 * 2 + r0] = p_next0;
    spec.transition[off + 1 * 2 + r1] = p_next1;
  };
  set_row(0, 0, 0.5, 1, 0.5, 0);  // E[r|0,a] = 0.5
  set_row(0, 1, 0.5, 1, 0.5, 0);
  set_row(1, 0, 0.5, 0, 0.5, 1);  // E[r|1,a] = 0.5... make it different:
  set_row(1, 1, 0.5, 1, 0.5, 1);  // E[r|1,1] = 1
  spec.start_distribution = {1.0, 0.0};
  spec.validate();
  std::vector<double> uniform(4, 0.5);
  double expected = 0.0;
  for (int s = 0; s < 2; ++s) {
    for (int a = 0; a < 2; ++a) expected += 0.5 * 0.5 * spec.expected_reward(s, a);
  }
  CHECK(oracle::average_reward_oracle(spec, uniform) ==
        doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("average reward oracle matches a long Monte Carlo rollout") {
  MdpSpec spec = generate_random_mdp(6, 6, 2, true);
  // Stochastic policy, fixed arbitrary mixture.
  std::vector<double> policy(static_cast<std::size_t>(6) * 2);
  for (int s = 0; s < 6; ++s) {
    double p = 0.3 + 0.1 * (s % 3);
    policy[static_cast<std::size_t>(s) * 2 + 0] = p;
    policy[static_cast<std::size_t>(s) * 2 + 1] = 1.0 - p;
  }
  double exact = oracle::average_reward_oracle(spec, policy);

  SplitMix64 rng(1234);
  MdpEnv env(spec);
  env.reset(rng);
  const long n = 1000000;
  const long block = 1000;
  std::vector<double> block_means;
  double total = 0.0, block_total = 0.0;
  for (long i = 0; i < n; ++i) {
    int s = env.state_id();
    int a = rng.uniform01() < policy[static_cast<std::size_t>(s) * 2] ? 0 : 1;
    double r = env.step(a, rng).reward;
    total += r;
    block_total += r;
    if ((i + 1) % block == 0) {
      block_means.push_back(block_total / block);
      block_total = 0.0;
    }
  }
  double mc = total / n;
  double mean_of_blocks = 0.0;
  for (double m : block_means) mean_of_blocks += m;
  mean_of_blocks /= static_cast<double>(block_means.size());
  double var = 0.0;
  for (double m : block_means) var += (m - mean_of_blocks) * (m - mean_of_blocks);
  var /= static_cast<double>(block_means.size() - 1);
  double sigma = std::sqrt(var / static_cast<double>(block_means.size()));
  CHECK(std::fabs(mc - exact) <= 3.0 * sigma);
}

TEST_CASE("average reward oracle rejects chains with unreachable recurrent parts") {
  // Two absorbing states and a policy that never mixes them.
  MdpSpec spec;
  spec.num_states = 2;
  spec.num_actions = 1;
  spec.rewards = {0.0, 1.0};
  int len = spec.row_length();
  spec.transition.assign(static_cast<std::size_t>(2) * len, 0.0);
  spec.transition[0 * 2 + 0] = 1.0;                                  // 0 -> 0
  spec.transition[static_cast<std::size_t>(len) + 1 * 2 + 1] = 1.0;  // 1 -> 1
  spec.start_distribution = {1.0, 0.0};
  spec.validate();
  std::vector<double> policy{1.0, 1.0};
  CHECK_THROWS_AS(oracle::average_reward_oracle(spec, policy), std::invalid_argument);
}

TEST_CASE("finite differences recover the derivative of x squared") {
  ParamVector p{{3.0}, {}};
  ParamVector g = oracle::finite_diff_gradient(
      [](const ParamVector& w) { return w.values[0] * w.values[0]; }, p, 1e-5);
  CHECK(std::fabs(g.values[0] - 6.0) < 1e-6);
}

TEST_CASE("finite differences are exact for linear functions") {
  ParamVector p{{1.0, -2.0, 0.5}, {}};
  auto f = [](const ParamVector& w) {
    return 2.0 * w.values[0] - 3.0 * w.values[1] + 0.25 * w.values[2];
  };
  for (double h : {1e-3, 1e-5, 1e-7}) {
    ParamVector g = oracle::finite_diff_gradient(f, p, h);
    CHECK(g.values[0] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(g.values[1] == doctest::Approx(-3.0).epsilon(1e-8));
    CHECK(g.values[2] == doctest::Approx(0.25).epsilon(1e-7));
  }
}
