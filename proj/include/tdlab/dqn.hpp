#pragma once

#include <memory>
#include <optional>

#include "tdlab/agents.hpp"
#include "tdlab/replay.hpp"
#include "tdlab/td_errors.hpp"

namespace tdlab {

/// One replayed value update: explicit TD errors against the target network,
/// loss-weighted semi-gradient step on the online network, implicit TD
/// errors from the parameter change, then the average-reward rule. The
/// target network is left untouched; callers own its Polyak cadence.
/// `adam` must be non-null when cfg.optimizer is adam.
TdReport dqn_update_batch(TrainableQ& online, const TrainableQ& target,
                          const Batch& batch, const AgentConfig& cfg,
                          TargetKind target_kind, AvgRewardEstimator& estimator,
                          AdamState* adam = nullptr, EpsilonLedger* ledger = nullptr);

/// Replay-driven Q agent covering the DQN family: discounted, differential,
/// and reward-centering targets, with any of the average-reward update
/// rules.
class DqnAgent {
 public:
  DqnAgent(std::unique_ptr<TrainableQ> online, AgentConfig cfg, TargetKind target_kind,
           AvgRewardRule rule, double initial_avg_reward);

  int act(const Observation& obs, SplitMix64& rng) const;
  void observe(const Transition& transition);
  /// Samples and applies one update when the buffer and cadence allow it.
  std::optional<TdReport> update(SplitMix64& rng);

  const TrainableQ& online() const { return *online_; }
  TrainableQ& online() { return *online_; }
  const TrainableQ& target() const { return *target_; }
  const AvgRewardEstimator& estimator() const { return estimator_; }
  const EpsilonLedger& ledger() const { return ledger_; }
  const AgentConfig& config() const { return cfg_; }
  long updates_applied() const { return update_count_; }

 private:
  std::unique_ptr<TrainableQ> online_;
  std::unique_ptr<TrainableQ> target_;
  AgentConfig cfg_;
  TargetKind target_kind_;
  AvgRewardEstimator estimator_;
  EpsilonLedger ledger_;
  ReplayBuffer buffer_;
  AdamState adam_;
  long step_count_ = 0;
  long update_count_ = 0;
};

}  // namespace tdlab
