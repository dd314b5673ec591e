#include "tdlab/a2c.hpp"

namespace tdlab {

A2cReport a2c_update(TrainableV& critic, SquashedGaussianActor& actor,
                     const Observation& state, const ActionSample& action,
                     double reward, const Observation& next_state, bool terminal,
                     const AgentConfig& cfg, AdvantageRule rule) {
  cfg.validate();
  A2cReport report;
  double bootstrap = terminal ? 0.0 : cfg.gamma * critic.evaluate(next_state);
  double value = critic.evaluate(state);
  report.delta_explicit = reward + bootstrap - value;

  ParamSnapshot before = critic.snapshot();
  std::vector<double> new_params = before;
  // w' = w + alpha * delta_e * grad V(S), written directly into the copy.
  {
    std::vector<double> step(new_params.size(), 0.0);
    critic.accumulate_value_gradient(state, cfg.alpha * report.delta_explicit, step);
    for (std::size_t i = 0; i < new_params.size(); ++i) new_params[i] += step[i];
  }
  critic.set_params(std::move(new_params));
  report.delta_implicit =
      (critic.evaluate(state) - critic.evaluate_at(before, state)) / cfg.alpha;

  report.advantage =
      rule == AdvantageRule::implicit_td ? report.delta_implicit : report.delta_explicit;
  report.log_prob = actor.log_prob(state, action.pre_tanh);
  report.actor_loss = -report.log_prob * report.advantage;

  if (report.advantage != 0.0) {
    ParamVector grad = actor.log_prob_gradient(state, action.pre_tanh);
    std::vector<double> actor_params = actor.params();
    double scale = cfg.eta * cfg.alpha * report.advantage;
    for (std::size_t i = 0; i < actor_params.size(); ++i) {
      actor_params[i] += scale * grad.values[i];
    }
    actor.set_params(std::move(actor_params));
  }
  return report;
}

A2cAgent::A2cAgent(std::unique_ptr<TrainableV> critic, SquashedGaussianActor actor,
                   AgentConfig cfg, AdvantageRule rule)
    : critic_(std::move(critic)), actor_(std::move(actor)), cfg_(cfg), rule_(rule) {
  cfg_.validate();
}

ActionSample A2cAgent::act(const Observation& obs, SplitMix64& rng) const {
  return actor_.sample(obs, rng);
}

A2cReport A2cAgent::step_update(const Observation& state, const ActionSample& action,
                                double reward, const Observation& next_state,
                                bool terminal) {
  return a2c_update(*critic_, actor_, state, action, reward, next_state, terminal,
                    cfg_, rule_);
}

}  // namespace tdlab
