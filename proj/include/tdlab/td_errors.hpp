#pragma once

#include <vector>

#include "tdlab/core_types.hpp"
#include "tdlab/features.hpp"
#include "tdlab/value_fn.hpp"

namespace tdlab {

enum class TargetKind { discounted, differential, centered };

/// Which bootstrapped target the explicit TD error uses.
///   discounted:   R + gamma * max_a Q'(S', a) - Q(S, A)
///   differential: R - avg_reward + max_a Q'(S', a) - Q(S, A)
///   centered:     R - avg_reward + gamma * max_a Q'(S', a) - Q(S, A)
struct TdMode {
  TargetKind kind = TargetKind::discounted;
  double gamma = 1.0;
  double avg_reward = 0.0;

  static TdMode discounted(double gamma);
  static TdMode differential(double avg_reward);
  static TdMode centered(double gamma, double avg_reward);

  bool uses_avg_reward() const { return kind != TargetKind::discounted; }
};

/// Per-sample explicit TD errors: bootstrapped target minus prediction.
/// The bootstrap is zeroed at terminal transitions (discounted/centered);
/// differential mode rejects terminals outright, it is a continuing-task
/// formulation.
std::vector<double> explicit_td(const Batch& batch, const ActionValueFn& value,
                                const ActionValueFn& target_value, const TdMode& mode);

/// Per-sample implicit TD errors: change in the prediction across a single
/// optimizer update, divided by the step size used in that update. The two
/// snapshots must come from `value` immediately before and after the update.
std::vector<double> implicit_td(const Batch& batch, const ParamSnapshot& before,
                                const ParamSnapshot& after, const ActionValueFn& value,
                                double alpha);

/// Both TD error readings for one update and their gap.
struct TdReport {
  std::vector<double> explicit_per_sample;
  std::vector<double> implicit_per_sample;
  double explicit_mean = 0.0;
  double implicit_mean = 0.0;
  double gap = 0.0;  // explicit_mean - implicit_mean
  double alpha_used = 0.0;
};

TdReport make_td_report(std::vector<double> explicit_errors,
                        std::vector<double> implicit_errors, double alpha);

/// Closed-form batch-mean implicit TD error for a plain linear SGD update:
/// (1/B) sum_k explicit[k] * (1/B) sum_j <x_k, x_j>.
double predict_implicit_linear(const std::vector<FeatureVector>& batch_features,
                               const std::vector<double>& explicit_errors);

struct GramCondition {
  bool satisfied = false;
  std::vector<double> per_sample_gram_means;
};

/// The two batch-mean TD errors coincide under linear SGD exactly when every
/// sample's average feature inner product across the batch equals one.
GramCondition batch_equality_condition(const std::vector<FeatureVector>& batch_features);

/// Running decomposition of an average-reward estimate into the part driven
/// by implicit TD errors and the part driven by the explicit/implicit gap.
/// For a run whose estimate is updated with eta*alpha*explicit_mean each
/// step, the estimate is reconstructed as initial + implicit_sum + gap_sum.
struct EpsilonLedger {
  double implicit_sum = 0.0;
  double gap_sum = 0.0;
  long updates = 0;

  void record(double alpha, double eta, double gap, double implicit_mean);
  double reconstruct(double initial_avg_reward) const;
};

}  // namespace tdlab
