#pragma once

#include "tdlab/agents.hpp"
#include "tdlab/policy.hpp"

namespace tdlab {

enum class AdvantageRule { implicit_td, explicit_td };

struct A2cReport {
  double delta_explicit = 0.0;
  double delta_implicit = 0.0;
  double advantage = 0.0;  // the delta actually fed to the actor
  double log_prob = 0.0;
  double actor_loss = 0.0;  // -log pi(A|S) * advantage
};

/// Strictly online actor-critic step. The critic takes the semi-gradient
/// step w' = w + alpha * delta_e * grad V(S); the actor ascends
/// eta * alpha * delta * grad log pi(A|S) where delta is the explicit or
/// implicit TD error per `rule`. Both TD errors are always measured.
A2cReport a2c_update(TrainableV& critic, SquashedGaussianActor& actor,
                     const Observation& state, const ActionSample& action,
                     double reward, const Observation& next_state, bool terminal,
                     const AgentConfig& cfg, AdvantageRule rule);

class A2cAgent {
 public:
  A2cAgent(std::unique_ptr<TrainableV> critic, SquashedGaussianActor actor,
           AgentConfig cfg, AdvantageRule rule);

  ActionSample act(const Observation& obs, SplitMix64& rng) const;
  A2cReport step_update(const Observation& state, const ActionSample& action,
                        double reward, const Observation& next_state, bool terminal);

  const TrainableV& critic() const { return *critic_; }
  const SquashedGaussianActor& actor() const { return actor_; }

 private:
  std::unique_ptr<TrainableV> critic_;
  SquashedGaussianActor actor_;
  AgentConfig cfg_;
  AdvantageRule rule_;
};

}  // namespace tdlab
