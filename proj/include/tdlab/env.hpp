#pragma once

#include "tdlab/core_types.hpp"
#include "tdlab/rng.hpp"

namespace tdlab {

/// Discrete-action environment driven by the experiment harness. Instances
/// are single-owner mutable objects; run one per seed.
class DiscreteEnv {
 public:
  virtual ~DiscreteEnv() = default;
  virtual int num_actions() const = 0;
  /// Number of distinct state ids, or -1 for continuous-state environments.
  virtual int num_states() const { return -1; }
  virtual int observation_dim() const = 0;
  virtual Observation reset(SplitMix64& rng) = 0;
  virtual StepResult step(int action, SplitMix64& rng) = 0;
  virtual double min_reward() const = 0;
  virtual double max_reward() const = 0;
};

}  // namespace tdlab
