#pragma once

#include <span>
#include <vector>

#include "tdlab/mlp.hpp"
#include "tdlab/rng.hpp"
#include "tdlab/value_fn.hpp"

namespace tdlab {

/// With probability epsilon a uniform action, otherwise the greedy action
/// (ties to the lowest index).
int epsilon_greedy_action(const ActionValueFn& value, const Observation& obs,
                          double epsilon, SplitMix64& rng);

/// Continuous action draw together with the pre-squash sample needed to
/// evaluate and differentiate its log density later.
struct ActionSample {
  std::vector<double> action;
  std::vector<double> pre_tanh;
  double log_prob = 0.0;
};

/// tanh-squashed Gaussian policy head on an MLP body. The network outputs
/// [mean..., raw_log_std...]; the log std is clamped to
/// [log_std_min, log_std_max] before exponentiation, and actions are
/// tanh(x) * max_action. Log densities include the tanh change-of-variables
/// correction.
class SquashedGaussianActor {
 public:
  SquashedGaussianActor(MlpSpec body, ParamVector params, double max_action);
  static SquashedGaussianActor with_init(MlpSpec body, double max_action,
                                         SplitMix64& rng);

  int action_dim() const { return spec_.output_dim / 2; }
  const MlpSpec& spec() const { return spec_; }
  const std::vector<double>& params() const { return params_.values; }
  void set_params(std::vector<double> values);

  /// Network heads for one observation: means and clamped log stds.
  struct Heads {
    std::vector<double> mean;
    std::vector<double> log_std;          // clamped
    std::vector<double> raw_log_std;      // pre-clamp, for gradient gating
  };
  Heads heads(const Observation& obs) const;

  ActionSample sample(const Observation& obs, SplitMix64& rng) const;
  double log_prob(const Observation& obs, std::span<const double> pre_tanh) const;
  /// d log pi(a|s) / d params at a fixed sampled action.
  ParamVector log_prob_gradient(const Observation& obs,
                                std::span<const double> pre_tanh) const;

  double log_std_min = -20.0;
  double log_std_max = 2.0;

 private:
  MlpSpec spec_;
  ParamVector params_;
  double max_action_;
};

}  // namespace tdlab
