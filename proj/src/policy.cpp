#include "tdlab/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tdlab {

int epsilon_greedy_action(const ActionValueFn& value, const Observation& obs,
                          double epsilon, SplitMix64& rng) {
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw std::invalid_argument("epsilon_greedy_action: epsilon outside [0, 1]");
  }
  if (epsilon > 0.0 && rng.uniform01() < epsilon) {
    return rng.uniform_int(value.num_actions());
  }
  return value.argmax_action(obs);
}

SquashedGaussianActor::SquashedGaussianActor(MlpSpec body, ParamVector params,
                                             double max_action)
    : spec_(std::move(body)), params_(std::move(params)), max_action_(max_action) {
  spec_.validate();
  if (spec_.output_dim % 2 != 0) {
    throw std::invalid_argument("SquashedGaussianActor: output must hold mean and log-std heads");
  }
  if (params_.size() != spec_.param_count()) {
    throw std::invalid_argument("SquashedGaussianActor: parameter count mismatch");
  }
  if (max_action <= 0.0) {
    throw std::invalid_argument("SquashedGaussianActor: max_action must be positive");
  }
}

SquashedGaussianActor SquashedGaussianActor::with_init(MlpSpec body, double max_action,
                                                       SplitMix64& rng) {
  ParamVector p = init_mlp_params(body, rng);
  return SquashedGaussianActor(std::move(body), std::move(p), max_action);
}

void SquashedGaussianActor::set_params(std::vector<double> values) {
  if (values.size() != params_.size()) {
    throw std::invalid_argument("SquashedGaussianActor: parameter length mismatch");
  }
  params_.values = std::move(values);
}

SquashedGaussianActor::Heads SquashedGaussianActor::heads(const Observation& obs) const {
  std::vector<double> out = mlp_forward(spec_, params_, obs.vec);
  int d = action_dim();
  Heads h;
  h.mean.assign(out.begin(), out.begin() + d);
  h.raw_log_std.assign(out.begin() + d, out.end());
  h.log_std.resize(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    h.log_std[static_cast<std::size_t>(i)] =
        std::clamp(h.raw_log_std[static_cast<std::size_t>(i)], log_std_min, log_std_max);
  }
  return h;
}

namespace {
constexpr double kLogTwoPi = 1.8378770664093454836;
constexpr double kLogTwo = 0.69314718055994530942;

// log(1 - tanh(x)^2) in a form stable for large |x|.
double log_one_minus_tanh_sq(double x) {
  return 2.0 * (kLogTwo - x - std::log1p(std::exp(-2.0 * x)));
}
}  // namespace

ActionSample SquashedGaussianActor::sample(const Observation& obs, SplitMix64& rng) const {
  Heads h = heads(obs);
  int d = action_dim();
  ActionSample s;
  s.pre_tanh.resize(static_cast<std::size_t>(d));
  s.action.resize(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    double std_dev = std::exp(h.log_std[static_cast<std::size_t>(i)]);
    double x = h.mean[static_cast<std::size_t>(i)] + std_dev * rng.gaussian();
    s.pre_tanh[static_cast<std::size_t>(i)] = x;
    s.action[static_cast<std::size_t>(i)] = std::tanh(x) * max_action_;
  }
  s.log_prob = log_prob(obs, s.pre_tanh);
  return s;
}

double SquashedGaussianActor::log_prob(const Observation& obs,
                                       std::span<const double> pre_tanh) const {
  Heads h = heads(obs);
  int d = action_dim();
  double lp = 0.0;
  for (int i = 0; i < d; ++i) {
    double log_std = h.log_std[static_cast<std::size_t>(i)];
    double std_dev = std::exp(log_std);
    double z = (pre_tanh[static_cast<std::size_t>(i)] - h.mean[static_cast<std::size_t>(i)]) / std_dev;
    lp += -0.5 * z * z - log_std - 0.5 * kLogTwoPi;
    // Change of variables through a = tanh(x) * max_action.
    lp -= log_one_minus_tanh_sq(pre_tanh[static_cast<std::size_t>(i)]) + std::log(max_action_);
  }
  return lp;
}

ParamVector SquashedGaussianActor::log_prob_gradient(const Observation& obs,
                                                     std::span<const double> pre_tanh) const {
  Heads h = heads(obs);
  int d = action_dim();
  // At a fixed action the tanh correction is parameter-free, so only the
  // Gaussian density terms contribute. Clamped log-std outputs get zero
  // gradient, matching the clamp's subgradient.
  std::vector<double> cotangent(static_cast<std::size_t>(spec_.output_dim), 0.0);
  for (int i = 0; i < d; ++i) {
    double log_std = h.log_std[static_cast<std::size_t>(i)];
    double std_dev = std::exp(log_std);
    double z = (pre_tanh[static_cast<std::size_t>(i)] - h.mean[static_cast<std::size_t>(i)]) / std_dev;
    cotangent[static_cast<std::size_t>(i)] = z / std_dev;  // d lp / d mean
    double raw = h.raw_log_std[static_cast<std::size_t>(i)];
    if (raw > log_std_min && raw < log_std_max) {
      cotangent[static_cast<std::size_t>(d + i)] = z * z - 1.0;  // d lp / d log_std
    }
  }
  return mlp_gradient_weighted(spec_, params_, obs.vec, cotangent);
}

}  // namespace tdlab
