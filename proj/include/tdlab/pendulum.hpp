#pragma once

#include <array>

#include "tdlab/env.hpp"

namespace tdlab {

/// Classic torque-limited swing-up pendulum. theta = 0 is upright; theta is
/// wrapped to [-pi, pi].
struct PendulumParams {
  double gravity = 10.0;
  double mass = 1.0;
  double length = 1.0;
  double dt = 0.05;
  double max_torque = 2.0;
  double max_speed = 8.0;
  /// Steps before truncation; 0 means a continuing task (never truncates).
  int max_episode_steps = 200;
};

struct PendulumState {
  double theta = 0.0;
  double theta_dot = 0.0;
};

struct PendulumStepResult {
  PendulumState next;
  double reward = 0.0;
};

/// One Euler step. The reward is charged on the pre-step state:
/// -(theta^2 + 0.1 theta_dot^2 + 0.001 torque^2), torque clipped first.
PendulumStepResult pendulum_dynamics(const PendulumState& state, double torque,
                                     const PendulumParams& params);

double pendulum_min_reward(const PendulumParams& params);

/// Continuous-torque pendulum. Observations are (cos theta, sin theta,
/// theta_dot). Resets draw theta uniform in [-pi, pi] and theta_dot uniform
/// in [-1, 1]. Episodes truncate, they never terminate.
class PendulumEnv {
 public:
  explicit PendulumEnv(PendulumParams params = {});

  const PendulumParams& params() const { return params_; }
  const PendulumState& state() const { return state_; }
  Observation observation() const;

  Observation reset(SplitMix64& rng);
  StepResult step(double torque);

 private:
  PendulumParams params_;
  PendulumState state_;
  int steps_in_episode_ = 0;
};

/// Discrete wrapper: action ids {0, 1, 2} map to torques {-2, 0, +2}.
class DiscretePendulumEnv : public DiscreteEnv {
 public:
  explicit DiscretePendulumEnv(PendulumParams params = {});

  const PendulumEnv& base() const { return base_; }
  double torque_for(int action) const { return torques_[static_cast<std::size_t>(action)]; }

  int num_actions() const override { return 3; }
  int observation_dim() const override { return 3; }
  Observation reset(SplitMix64& rng) override;
  StepResult step(int action, SplitMix64& rng) override;
  double min_reward() const override { return pendulum_min_reward(base_.params()); }
  double max_reward() const override { return 0.0; }

 private:
  PendulumEnv base_;
  std::array<double, 3> torques_;
};

}  // namespace tdlab
