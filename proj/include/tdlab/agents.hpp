#pragma once

#include "tdlab/core_types.hpp"
#include "tdlab/loss.hpp"
#include "tdlab/optim.hpp"
#include "tdlab/value_fn.hpp"

namespace tdlab {

/// How the average-reward estimate is moved after each value update.
enum class AvgRewardRule { none, implicit_td, explicit_td, smallest_magnitude };

/// Running average-reward estimate with its step-size factor eta; the
/// effective step size is eta * alpha.
struct AvgRewardEstimator {
  double value = 0.0;
  double eta = 1.0;
  AvgRewardRule rule = AvgRewardRule::none;
};

struct AgentConfig {
  double alpha = 2e-4;
  double eta = 1.0;
  double gamma = 0.99;
  double lambda = 1.0;
  int batch_size = 32;
  double tau_polyak = 0.005;
  int update_period = 1;
  int target_update_period = 1;
  std::size_t buffer_capacity = 100000;
  std::size_t buffer_min = 100;
  double exploration_epsilon = 0.1;
  OptimizerKind optimizer = OptimizerKind::sgd;
  LossKind loss = LossKind::smooth_l1;

  LossSpec loss_spec() const { return LossSpec{loss, lambda}; }
  void validate() const;
};

struct TabularUpdateResult {
  double delta_explicit = 0.0;
  double delta_implicit = 0.0;
  /// alpha == 0 leaves the table unchanged; the implicit error is then
  /// reported equal to the explicit one instead of dividing by zero.
  bool alpha_was_zero = false;
};

/// One-step tabular Q-learning update in place; only the (S, A) entry moves,
/// by alpha * delta.
TabularUpdateResult tabular_q_update(TabularQ& q, const Transition& transition,
                                     double alpha, double gamma);

struct TabularDifferentialResult {
  double delta = 0.0;  // explicit == implicit in the tabular case
  bool alpha_was_zero = false;
};

/// One-step tabular Differential Q-learning update: undiscounted TD error
/// with the reward shifted by the running average-reward estimate, which
/// itself moves by eta * alpha * delta. Continuing tasks only.
TabularDifferentialResult tabular_differential_q_update(TabularQ& q,
                                                        AvgRewardEstimator& estimator,
                                                        const Transition& transition,
                                                        double alpha);

}  // namespace tdlab
