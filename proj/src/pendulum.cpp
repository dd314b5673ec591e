#include "tdlab/pendulum.hpp"

#include <algorithm>
#include <cmath>

namespace tdlab {

namespace {
constexpr double kPi = 3.14159265358979323846;

double wrap_angle(double theta) {
  double wrapped = std::fmod(theta + kPi, 2.0 * kPi);
  if (wrapped < 0.0) wrapped += 2.0 * kPi;
  return wrapped - kPi;
}
}  // namespace

PendulumStepResult pendulum_dynamics(const PendulumState& state, double torque,
                                     const PendulumParams& p) {
  double u = std::clamp(torque, -p.max_torque, p.max_torque);
  double reward = -(state.theta * state.theta + 0.1 * state.theta_dot * state.theta_dot +
                    0.001 * u * u);
  double accel = 3.0 * p.gravity / (2.0 * p.length) * std::sin(state.theta) +
                 3.0 * u / (p.mass * p.length * p.length);
  PendulumState next;
  next.theta_dot = std::clamp(state.theta_dot + accel * p.dt, -p.max_speed, p.max_speed);
  next.theta = wrap_angle(state.theta + next.theta_dot * p.dt);
  return {next, reward};
}

double pendulum_min_reward(const PendulumParams& p) {
  return -(kPi * kPi + 0.1 * p.max_speed * p.max_speed +
           0.001 * p.max_torque * p.max_torque);
}

PendulumEnv::PendulumEnv(PendulumParams params) : params_(params) {}

Observation PendulumEnv::observation() const {
  Observation obs;
  obs.vec = {std::cos(state_.theta), std::sin(state_.theta), state_.theta_dot};
  return obs;
}

Observation PendulumEnv::reset(SplitMix64& rng) {
  state_.theta = rng.uniform(-kPi, kPi);
  state_.theta_dot = rng.uniform(-1.0, 1.0);
  steps_in_episode_ = 0;
  return observation();
}

StepResult PendulumEnv::step(double torque) {
  PendulumStepResult r = pendulum_dynamics(state_, torque, params_);
  state_ = r.next;
  steps_in_episode_ += 1;
  StepResult result;
  result.next_observation = observation();
  result.reward = r.reward;
  result.terminal = false;
  result.truncated = params_.max_episode_steps > 0 &&
                     steps_in_episode_ >= params_.max_episode_steps;
  return result;
}

DiscretePendulumEnv::DiscretePendulumEnv(PendulumParams params)
    : base_(params),
      torques_{-params.max_torque, 0.0, params.max_torque} {}

Observation DiscretePendulumEnv::reset(SplitMix64& rng) { return base_.reset(rng); }

StepResult DiscretePendulumEnv::step(int action, SplitMix64&) {
  return base_.step(torques_[static_cast<std::size_t>(action)]);
}

}  // namespace tdlab
