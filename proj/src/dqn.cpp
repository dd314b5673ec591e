#include "tdlab/dqn.hpp"

#include <cmath>
#include <stdexcept>

#include "tdlab/policy.hpp"

namespace tdlab {

namespace {

TdMode make_mode(TargetKind kind, const AgentConfig& cfg, double avg_reward) {
  switch (kind) {
    case TargetKind::discounted:
      return TdMode::discounted(cfg.gamma);
    case TargetKind::differential:
      if (cfg.gamma != 1.0) {
        throw ConfigError("differential targets are undiscounted; set gamma = 1");
      }
      return TdMode::differential(avg_reward);
    case TargetKind::centered:
      return TdMode::centered(cfg.gamma, avg_reward);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

TdReport dqn_update_batch(TrainableQ& online, const TrainableQ& target,
                          const Batch& batch, const AgentConfig& cfg,
                          TargetKind target_kind, AvgRewardEstimator& estimator,
                          AdamState* adam, EpsilonLedger* ledger) {
  cfg.validate();
  if (batch.empty()) throw std::invalid_argument("dqn_update_batch: empty batch");
  if (cfg.optimizer == OptimizerKind::adam && adam == nullptr) {
    throw std::invalid_argument("dqn_update_batch: adam state required");
  }
  TdMode mode = make_mode(target_kind, cfg, estimator.value);
  std::vector<double> explicit_errors = explicit_td(batch, online, target, mode);

  // Semi-gradient of mean loss over residuals: the bootstrapped target is a
  // constant, so d loss / d w = -(1/B) sum L'(delta_b) grad q_b.
  LossSpec loss = cfg.loss_spec();
  std::vector<double> grad(online.params().size(), 0.0);
  double inv_b = 1.0 / static_cast<double>(batch.size());
  for (std::size_t b = 0; b < batch.size(); ++b) {
    double coeff = -inv_b * loss_derivative(loss, explicit_errors[b]);
    online.accumulate_value_gradient(batch[b].state, batch[b].action, coeff, grad);
  }

  ParamSnapshot before = online.snapshot();
  ParamVector params_pv{before, {}};
  ParamVector grad_pv{std::move(grad), {}};
  auto [updated, adam_next] =
      optimizer_step(cfg.optimizer, params_pv, grad_pv, cfg.alpha,
                     cfg.optimizer == OptimizerKind::adam ? adam : nullptr);
  if (adam != nullptr) *adam = std::move(adam_next);
  online.set_params(std::move(updated.values));
  ParamSnapshot after = online.snapshot();

  // Implicit errors read the online network before/after this one update;
  // for Adam, alpha is the configured step size.
  std::vector<double> implicit_errors = implicit_td(batch, before, after, online, cfg.alpha);
  TdReport report = make_td_report(std::move(explicit_errors), std::move(implicit_errors),
                                   cfg.alpha);

  switch (estimator.rule) {
    case AvgRewardRule::none:
      break;
    case AvgRewardRule::implicit_td:
      estimator.value += estimator.eta * cfg.alpha * report.implicit_mean;
      break;
    case AvgRewardRule::explicit_td:
      estimator.value += estimator.eta * cfg.alpha * report.explicit_mean;
      break;
    case AvgRewardRule::smallest_magnitude: {
      std::size_t y = 0;
      for (std::size_t b = 1; b < report.explicit_per_sample.size(); ++b) {
        if (std::fabs(report.explicit_per_sample[b]) <
            std::fabs(report.explicit_per_sample[y])) {
          y = b;  // ties keep the lowest index
        }
      }
      estimator.value += estimator.eta * cfg.alpha * report.explicit_per_sample[y];
      break;
    }
  }
  if (ledger != nullptr && estimator.rule != AvgRewardRule::none) {
    ledger->record(cfg.alpha, estimator.eta, report.gap, report.implicit_mean);
  }
  return report;
}

DqnAgent::DqnAgent(std::unique_ptr<TrainableQ> online, AgentConfig cfg,
                   TargetKind target_kind, AvgRewardRule rule, double initial_avg_reward)
    : online_(std::move(online)),
      cfg_(cfg),
      target_kind_(target_kind),
      buffer_(cfg.buffer_capacity, cfg.buffer_min) {
  cfg_.validate();
  if (target_kind_ == TargetKind::differential && cfg_.gamma != 1.0) {
    throw ConfigError("DqnAgent: differential targets require gamma = 1");
  }
  if (target_kind_ != TargetKind::discounted && rule == AvgRewardRule::none) {
    throw ConfigError("DqnAgent: differential/centered targets need an average-reward rule");
  }
  target_ = online_->clone();
  estimator_.value = initial_avg_reward;
  estimator_.eta = cfg_.eta;
  estimator_.rule = rule;
  if (cfg_.optimizer == OptimizerKind::adam) {
    adam_ = AdamState::for_params(online_->params().size());
  }
}

int DqnAgent::act(const Observation& obs, SplitMix64& rng) const {
  return epsilon_greedy_action(*online_, obs, cfg_.exploration_epsilon, rng);
}

void DqnAgent::observe(const Transition& transition) {
  if (target_kind_ == TargetKind::differential && transition.terminal) {
    throw ConfigError("DqnAgent: terminal transition in a differential run");
  }
  buffer_.push(transition);
  step_count_ += 1;
}

std::optional<TdReport> DqnAgent::update(SplitMix64& rng) {
  if (!buffer_.ready(static_cast<std::size_t>(cfg_.batch_size))) return std::nullopt;
  if (step_count_ % cfg_.update_period != 0) return std::nullopt;
  Batch batch = buffer_.sample(static_cast<std::size_t>(cfg_.batch_size), rng);
  TdReport report = dqn_update_batch(
      *online_, *target_, batch, cfg_, target_kind_, estimator_,
      cfg_.optimizer == OptimizerKind::adam ? &adam_ : nullptr, &ledger_);
  update_count_ += 1;
  if (update_count_ % cfg_.target_update_period == 0) {
    ParamVector target_pv{target_->params(), {}};
    ParamVector online_pv{online_->params(), {}};
    target_->set_params(polyak_update(target_pv, online_pv, cfg_.tau_polyak).values);
  }
  return report;
}

}  // namespace tdlab
