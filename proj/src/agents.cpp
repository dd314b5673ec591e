#include "tdlab/agents.hpp"

#include <stdexcept>

namespace tdlab {

void AgentConfig::validate() const {
  if (alpha <= 0.0) throw ConfigError("AgentConfig: alpha must be positive");
  if (eta <= 0.0) throw ConfigError("AgentConfig: eta must be positive");
  if (gamma < 0.0 || gamma > 1.0) throw ConfigError("AgentConfig: gamma outside [0, 1]");
  if (lambda <= 0.0) throw ConfigError("AgentConfig: lambda must be positive");
  if (batch_size <= 0) throw ConfigError("AgentConfig: batch_size must be positive");
  if (!(tau_polyak > 0.0 && tau_polyak <= 1.0)) {
    throw ConfigError("AgentConfig: tau_polyak must be in (0, 1]");
  }
  if (update_period <= 0 || target_update_period <= 0) {
    throw ConfigError("AgentConfig: update periods must be positive");
  }
  if (exploration_epsilon < 0.0 || exploration_epsilon > 1.0) {
    throw ConfigError("AgentConfig: exploration epsilon outside [0, 1]");
  }
}

TabularUpdateResult tabular_q_update(TabularQ& q, const Transition& transition,
                                     double alpha, double gamma) {
  if (alpha < 0.0) throw std::invalid_argument("tabular_q_update: negative alpha");
  double bootstrap = transition.terminal ? 0.0 : gamma * q.max_value(transition.next_state);
  double old_value = q.evaluate(transition.state, transition.action);
  double delta = transition.reward + bootstrap - old_value;

  TabularUpdateResult result;
  result.delta_explicit = delta;
  if (alpha == 0.0) {
    result.delta_implicit = delta;
    result.alpha_was_zero = true;
    return result;
  }
  double& cell = q.at(transition.state.state_id, transition.action);
  cell = old_value + alpha * delta;
  result.delta_implicit = (cell - old_value) / alpha;
  return result;
}

TabularDifferentialResult tabular_differential_q_update(TabularQ& q,
                                                        AvgRewardEstimator& estimator,
                                                        const Transition& transition,
                                                        double alpha) {
  if (transition.terminal) {
    throw ConfigError("tabular_differential_q_update: continuing tasks only");
  }
  if (alpha < 0.0) throw std::invalid_argument("tabular_differential_q_update: negative alpha");
  double old_value = q.evaluate(transition.state, transition.action);
  double delta = transition.reward - estimator.value +
                 q.max_value(transition.next_state) - old_value;

  TabularDifferentialResult result;
  result.delta = delta;
  if (alpha == 0.0) {
    result.alpha_was_zero = true;
    return result;
  }
  q.at(transition.state.state_id, transition.action) = old_value + alpha * delta;
  estimator.value += estimator.eta * alpha * delta;
  return result;
}

}  // namespace tdlab
