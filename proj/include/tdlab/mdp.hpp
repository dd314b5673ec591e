#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tdlab/env.hpp"

namespace tdlab {

/// Exact finite-MDP dynamics: a joint probability table over (next state,
/// reward index) per (state, action), enabling dynamic-programming oracles.
struct MdpSpec {
  int num_states = 0;
  int num_actions = 0;
  std::vector<double> rewards;
  /// Row-major [s][a][(s' * num_rewards) + r], each (s, a) row sums to 1.
  std::vector<double> transition;
  double gamma = 0.99;
  std::vector<double> start_distribution;

  int num_rewards() const { return static_cast<int>(rewards.size()); }
  int row_length() const { return num_states * num_rewards(); }
  std::span<const double> row(int state_id, int action_id) const;
  double joint_prob(int s, int a, int next_s, int reward_index) const;
  double next_state_prob(int s, int a, int next_s) const;
  double expected_reward(int s, int a) const;
  double min_reward() const;
  double max_reward() const;
  /// Checks row normalization (1e-12) and finite rewards.
  void validate() const;
};

/// Random MDP with strictly positive, normalized transition rows; with
/// `ergodic` every next-state probability is at least 0.01/num_states, which
/// forces a single recurrent class under any policy. The reward list spans
/// [-1, 1] with its endpoints included.
MdpSpec generate_random_mdp(std::uint64_t seed, int num_states, int num_actions,
                            bool ergodic, int num_rewards = 4);

/// Samples (next state, reward) from the table row via inverse CDF on one
/// uniform draw.
StepResult mdp_step(const MdpSpec& spec, int state_id, int action_id, SplitMix64& rng);

/// Two states that deterministically swap; reward 1 when leaving state 0 and
/// 0 otherwise, so every policy earns an average reward of 1/2.
MdpSpec make_two_state_swap();

/// Deterministic ring: both actions advance one state; the reward depends on
/// (state, action) through a fixed pattern over {0, 0.5, 1}. The stationary
/// distribution of any policy is uniform, so average rewards have closed
/// forms.
MdpSpec make_ring_mdp(int num_states);

/// Reward earned in state s under action a of the ring MDP.
double ring_reward(int state_id, int action_id);

class MdpEnv : public DiscreteEnv {
 public:
  explicit MdpEnv(MdpSpec spec);

  const MdpSpec& spec() const { return spec_; }
  int state_id() const { return state_; }

  int num_actions() const override { return spec_.num_actions; }
  int num_states() const override { return spec_.num_states; }
  int observation_dim() const override { return spec_.num_states; }
  Observation reset(SplitMix64& rng) override;
  StepResult step(int action, SplitMix64& rng) override;
  double min_reward() const override { return spec_.min_reward(); }
  double max_reward() const override { return spec_.max_reward(); }

 private:
  Observation observe(int state_id) const;  // id plus one-hot vec

  MdpSpec spec_;
  int state_ = 0;
};

}  // namespace tdlab
