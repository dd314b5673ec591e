#include "tdlab/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tdlab {

std::span<const double> MdpSpec::row(int state_id, int action_id) const {
  std::size_t len = static_cast<std::size_t>(row_length());
  std::size_t off = (static_cast<std::size_t>(state_id) * num_actions + action_id) * len;
  return {transition.data() + off, len};
}

double MdpSpec::joint_prob(int s, int a, int next_s, int reward_index) const {
  return row(s, a)[static_cast<std::size_t>(next_s) * num_rewards() + reward_index];
}

double MdpSpec::next_state_prob(int s, int a, int next_s) const {
  auto r = row(s, a);
  double p = 0.0;
  for (int k = 0; k < num_rewards(); ++k) {
    p += r[static_cast<std::size_t>(next_s) * num_rewards() + k];
  }
  return p;
}

double MdpSpec::expected_reward(int s, int a) const {
  auto r = row(s, a);
  double e = 0.0;
  for (int next_s = 0; next_s < num_states; ++next_s) {
    for (int k = 0; k < num_rewards(); ++k) {
      e += r[static_cast<std::size_t>(next_s) * num_rewards() + k] * rewards[static_cast<std::size_t>(k)];
    }
  }
  return e;
}

double MdpSpec::min_reward() const {
  return *std::min_element(rewards.begin(), rewards.end());
}

double MdpSpec::max_reward() const {
  return *std::max_element(rewards.begin(), rewards.end());
}

void MdpSpec::validate() const {
  if (num_states < 1 || num_actions < 1 || rewards.empty()) {
    throw std::invalid_argument("MdpSpec: empty state, action, or reward set");
  }
  if (transition.size() != static_cast<std::size_t>(num_states) * num_actions * row_length()) {
    throw std::invalid_argument("MdpSpec: transition table size mismatch");
  }
  for (double r : rewards) {
    if (!std::isfinite(r)) throw std::invalid_argument("MdpSpec: non-finite reward");
  }
  for (int s = 0; s < num_states; ++s) {
    for (int a = 0; a < num_actions; ++a) {
      double sum = 0.0;
      for (double p : row(s, a)) {
        if (p < 0.0) throw std::invalid_argument("MdpSpec: negative probability");
        sum += p;
      }
      if (std::fabs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("MdpSpec: transition row does not sum to 1");
      }
    }
  }
}

MdpSpec generate_random_mdp(std::uint64_t seed, int num_states, int num_actions,
                            bool ergodic, int num_rewards) {
  if (num_states < 2 || num_actions < 2 || num_rewards < 2) {
    throw std::invalid_argument("generate_random_mdp: sizes must be at least 2");
  }
  SplitMix64 rng(seed);
  MdpSpec spec;
  spec.num_states = num_states;
  spec.num_actions = num_actions;
  spec.rewards.resize(static_cast<std::size_t>(num_rewards));
  spec.rewards.front() = -1.0;
  spec.rewards.back() = 1.0;
  for (int k = 1; k + 1 < num_rewards; ++k) {
    spec.rewards[static_cast<std::size_t>(k)] = rng.uniform(-1.0, 1.0);
  }

  int len = num_states * num_rewards;
  // Per-entry floor so every next-state marginal is >= 0.01/num_states.
  double floor = ergodic ? 0.01 / (static_cast<double>(num_states) * num_rewards) : 0.0;
  double free_mass = 1.0 - floor * len;
  spec.transition.resize(static_cast<std::size_t>(num_states) * num_actions * len);
  for (int s = 0; s < num_states; ++s) {
    for (int a = 0; a < num_actions; ++a) {
      std::vector<double> draws(static_cast<std::size_t>(len));
      double total = 0.0;
      for (double& d : draws) {
        d = -std::log(1.0 - rng.uniform01());  // exponential, Dirichlet-like after normalizing
        total += d;
      }
      std::size_t off = (static_cast<std::size_t>(s) * num_actions + a) * len;
      double sum = 0.0;
      for (int i = 0; i < len; ++i) {
        double p = floor + free_mass * draws[static_cast<std::size_t>(i)] / total;
        spec.transition[off + i] = p;
        sum += p;
      }
      // Exact renormalization keeps rows summing to 1 within 1e-12.
      for (int i = 0; i < len; ++i) spec.transition[off + i] /= sum;
    }
  }
  spec.start_distribution.assign(static_cast<std::size_t>(num_states),
                                 1.0 / num_states);
  spec.validate();
  return spec;
}

StepResult mdp_step(const MdpSpec& spec, int state_id, int action_id, SplitMix64& rng) {
  if (state_id < 0 || state_id >= spec.num_states || action_id < 0 ||
      action_id >= spec.num_actions) {
    throw std::invalid_argument("mdp_step: id out of range");
  }
  auto row = spec.row(state_id, action_id);
  double u = rng.uniform01();
  double acc = 0.0;
  int picked = static_cast<int>(row.size()) - 1;
  for (std::size_t i = 0; i < row.size(); ++i) {
    acc += row[i];
    if (u < acc) {
      picked = static_cast<int>(i);
      break;
    }
  }
  StepResult result;
  result.next_observation.state_id = picked / spec.num_rewards();
  result.reward = spec.rewards[static_cast<std::size_t>(picked % spec.num_rewards())];
  return result;
}

MdpSpec make_two_state_swap() {
  MdpSpec spec;
  spec.num_states = 2;
  spec.num_actions = 2;
  spec.rewards = {0.0, 1.0};
  int len = spec.row_length();
  spec.transition.assign(static_cast<std::size_t>(2) * 2 * len, 0.0);
  for (int s = 0; s < 2; ++s) {
    for (int a = 0; a < 2; ++a) {
      int next_s = 1 - s;
      int reward_index = (s == 0) ? 1 : 0;  // leaving state 0 pays 1
      std::size_t off = (static_cast<std::size_t>(s) * 2 + a) * len;
      spec.transition[off + static_cast<std::size_t>(next_s) * 2 + reward_index] = 1.0;
    }
  }
  spec.start_distribution = {1.0, 0.0};
  spec.validate();
  return spec;
}

double ring_reward(int state_id, int action_id) {
  return 0.5 * ((state_id + 2 * action_id) % 3);
}

MdpSpec make_ring_mdp(int num_states) {
  if (num_states < 2) throw std::invalid_argument("make_ring_mdp: need at least 2 states");
  MdpSpec spec;
  spec.num_states = num_states;
  spec.num_actions = 2;
  spec.rewards = {0.0, 0.5, 1.0};
  int len = spec.row_length();
  spec.transition.assign(static_cast<std::size_t>(num_states) * 2 * len, 0.0);
  for (int s = 0; s < num_states; ++s) {
    for (int a = 0; a < 2; ++a) {
      int next_s = (s + 1) % num_states;
      int reward_index = (s + 2 * a) % 3;
      std::size_t off = (static_cast<std::size_t>(s) * 2 + a) * len;
      spec.transition[off + static_cast<std::size_t>(next_s) * 3 + reward_index] = 1.0;
    }
  }
  spec.start_distribution.assign(static_cast<std::size_t>(num_states), 0.0);
  spec.start_distribution[0] = 1.0;
  spec.validate();
  return spec;
}

MdpEnv::MdpEnv(MdpSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

Observation MdpEnv::observe(int state_id) const {
  Observation obs;
  obs.state_id = state_id;
  obs.vec.assign(static_cast<std::size_t>(spec_.num_states), 0.0);
  obs.vec[static_cast<std::size_t>(state_id)] = 1.0;
  return obs;
}

Observation MdpEnv::reset(SplitMix64& rng) {
  double u = rng.uniform01();
  double acc = 0.0;
  state_ = spec_.num_states - 1;
  for (int s = 0; s < spec_.num_states; ++s) {
    acc += spec_.start_distribution[static_cast<std::size_t>(s)];
    if (u < acc) {
      state_ = s;
      break;
    }
  }
  return observe(state_);
}

StepResult MdpEnv::step(int action, SplitMix64& rng) {
  StepResult r = mdp_step(spec_, state_, action, rng);
  state_ = r.next_observation.state_id;
  r.next_observation = observe(state_);
  return r;
}

}  // namespace tdlab
