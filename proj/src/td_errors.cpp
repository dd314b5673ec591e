#include "tdlab/td_errors.hpp"

#include <cmath>
#include <stdexcept>

namespace tdlab {

TdMode TdMode::discounted(double gamma) {
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("TdMode: gamma outside [0, 1]");
  return TdMode{TargetKind::discounted, gamma, 0.0};
}

TdMode TdMode::differential(double avg_reward) {
  return TdMode{TargetKind::differential, 1.0, avg_reward};
}

TdMode TdMode::centered(double gamma, double avg_reward) {
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("TdMode: gamma outside [0, 1]");
  return TdMode{TargetKind::centered, gamma, avg_reward};
}

std::vector<double> explicit_td(const Batch& batch, const ActionValueFn& value,
                                const ActionValueFn& target_value, const TdMode& mode) {
  if (batch.empty()) throw std::invalid_argument("explicit_td: empty batch");
  double bootstrap_scale = mode.kind == TargetKind::differential ? 1.0 : mode.gamma;
  std::vector<double> out;
  out.reserve(batch.size());
  for (const Transition& t : batch) {
    if (t.terminal && mode.kind == TargetKind::differential) {
      throw ConfigError("explicit_td: differential mode is continuing-task only");
    }
    double bootstrap = t.terminal ? 0.0 : bootstrap_scale * target_value.max_value(t.next_state);
    double reward = t.reward - (mode.uses_avg_reward() ? mode.avg_reward : 0.0);
    out.push_back(reward + bootstrap - value.evaluate(t.state, t.action));
  }
  return out;
}

std::vector<double> implicit_td(const Batch& batch, const ParamSnapshot& before,
                                const ParamSnapshot& after, const ActionValueFn& value,
                                double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("implicit_td: alpha must be positive");
  std::vector<double> out;
  out.reserve(batch.size());
  for (const Transition& t : batch) {
    double prev = value.evaluate_at(before, t.state, t.action);
    double next = value.evaluate_at(after, t.state, t.action);
    out.push_back((next - prev) / alpha);
  }
  return out;
}

namespace {
double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}
}  // namespace

TdReport make_td_report(std::vector<double> explicit_errors,
                        std::vector<double> implicit_errors, double alpha) {
  if (explicit_errors.size() != implicit_errors.size() || explicit_errors.empty()) {
    throw std::invalid_argument("make_td_report: per-sample arrays must match and be non-empty");
  }
  TdReport r;
  r.explicit_per_sample = std::move(explicit_errors);
  r.implicit_per_sample = std::move(implicit_errors);
  r.explicit_mean = mean_of(r.explicit_per_sample);
  r.implicit_mean = mean_of(r.implicit_per_sample);
  r.gap = r.explicit_mean - r.implicit_mean;
  r.alpha_used = alpha;
  return r;
}

double predict_implicit_linear(const std::vector<FeatureVector>& batch_features,
                               const std::vector<double>& explicit_errors) {
  if (batch_features.size() != explicit_errors.size()) {
    throw std::invalid_argument("predict_implicit_linear: array length mismatch");
  }
  std::size_t B = batch_features.size();
  double acc = 0.0;
  for (std::size_t k = 0; k < B; ++k) {
    double gram_mean = 0.0;
    for (std::size_t j = 0; j < B; ++j) {
      gram_mean += batch_features[k].dot(batch_features[j]);
    }
    gram_mean /= static_cast<double>(B);
    acc += explicit_errors[k] * gram_mean;
  }
  return acc / static_cast<double>(B);
}

GramCondition batch_equality_condition(const std::vector<FeatureVector>& batch_features) {
  if (batch_features.empty()) {
    throw std::invalid_argument("batch_equality_condition: empty batch");
  }
  std::size_t B = batch_features.size();
  GramCondition cond;
  cond.per_sample_gram_means.reserve(B);
  cond.satisfied = true;
  for (std::size_t k = 0; k < B; ++k) {
    double gram_mean = 0.0;
    for (std::size_t j = 0; j < B; ++j) {
      gram_mean += batch_features[k].dot(batch_features[j]);
    }
    gram_mean /= static_cast<double>(B);
    cond.per_sample_gram_means.push_back(gram_mean);
    if (std::abs(gram_mean - 1.0) > 1e-9) cond.satisfied = false;
  }
  return cond;
}

void EpsilonLedger::record(double alpha, double eta, double gap, double implicit_mean) {
  implicit_sum += eta * alpha * implicit_mean;
  gap_sum += eta * alpha * gap;
  updates += 1;
}

double EpsilonLedger::reconstruct(double initial_avg_reward) const {
  return initial_avg_reward + implicit_sum + gap_sum;
}

}  // namespace tdlab
