#include "tdlab/value_fn.hpp"

#include <limits>
#include <stdexcept>

namespace tdlab {

double ActionValueFn::max_value(const Observation& obs) const {
  double best = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < num_actions(); ++a) best = std::max(best, evaluate(obs, a));
  return best;
}

double ActionValueFn::max_value_at(const ParamSnapshot& snap,
                                   const Observation& obs) const {
  double best = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < num_actions(); ++a) {
    best = std::max(best, evaluate_at(snap, obs, a));
  }
  return best;
}

int ActionValueFn::argmax_action(const Observation& obs) const {
  int best_a = 0;
  double best = evaluate(obs, 0);
  for (int a = 1; a < num_actions(); ++a) {
    double v = evaluate(obs, a);
    if (v > best) {
      best = v;
      best_a = a;
    }
  }
  return best_a;
}

TabularQ::TabularQ(int num_states, int num_actions, double initial_value)
    : num_states_(num_states),
      num_actions_(num_actions),
      table_(static_cast<std::size_t>(num_states) * num_actions, initial_value) {
  if (num_states <= 0 || num_actions <= 0) {
    throw std::invalid_argument("TabularQ: sizes must be positive");
  }
}

double& TabularQ::at(int state_id, int action_id) {
  return table_[static_cast<std::size_t>(state_id) * num_actions_ + action_id];
}

double TabularQ::at(int state_id, int action_id) const {
  return table_[static_cast<std::size_t>(state_id) * num_actions_ + action_id];
}

double TabularQ::evaluate(const Observation& obs, int action) const {
  if (obs.state_id < 0 || obs.state_id >= num_states_) {
    throw std::invalid_argument("TabularQ: observation has no valid state id");
  }
  return at(obs.state_id, action);
}

double TabularQ::evaluate_at(const ParamSnapshot& snap, const Observation& obs,
                             int action) const {
  return snap[static_cast<std::size_t>(obs.state_id) * num_actions_ + action];
}

void TabularQ::set_params(std::vector<double> values) {
  if (values.size() != table_.size()) {
    throw std::invalid_argument("TabularQ: parameter length mismatch");
  }
  table_ = std::move(values);
}

void TabularQ::accumulate_value_gradient(const Observation& obs, int action,
                                         double coeff, std::vector<double>& grad) const {
  grad[static_cast<std::size_t>(obs.state_id) * num_actions_ + action] += coeff;
}

std::unique_ptr<TrainableQ> TabularQ::clone() const {
  return std::make_unique<TabularQ>(*this);
}

LinearQ::LinearQ(FeatureEncoder encoder, int feature_dim, int num_actions)
    : encoder_(std::move(encoder)),
      feature_dim_(feature_dim),
      num_actions_(num_actions),
      weights_(static_cast<std::size_t>(feature_dim), 0.0) {}

LinearQ LinearQ::one_hot(int num_states, int num_actions) {
  auto enc = [num_states, num_actions](const Observation& obs, int action) {
    return one_hot_encode(obs.state_id, action, num_states, num_actions);
  };
  return LinearQ(enc, num_states * num_actions, num_actions);
}

LinearQ LinearQ::tile_coded(TileCodingSpec spec) {
  spec.validate();
  int dim = spec.feature_dim();
  int actions = spec.num_actions;
  auto enc = [spec = std::move(spec)](const Observation& obs, int action) {
    return tile_encode(spec, obs.vec, action);
  };
  return LinearQ(enc, dim, actions);
}

FeatureVector LinearQ::features(const Observation& obs, int action) const {
  return encoder_(obs, action);
}

double LinearQ::evaluate(const Observation& obs, int action) const {
  return evaluate_at(weights_, obs, action);
}

double LinearQ::evaluate_at(const ParamSnapshot& snap, const Observation& obs,
                            int action) const {
  FeatureVector x = encoder_(obs, action);
  double v = 0.0;
  for (std::size_t i = 0; i < x.indices.size(); ++i) {
    v += snap[static_cast<std::size_t>(x.indices[i])] * x.values[i];
  }
  return v;
}

void LinearQ::set_params(std::vector<double> values) {
  if (values.size() != weights_.size()) {
    throw std::invalid_argument("LinearQ: parameter length mismatch");
  }
  weights_ = std::move(values);
}

void LinearQ::accumulate_value_gradient(const Observation& obs, int action,
                                        double coeff, std::vector<double>& grad) const {
  FeatureVector x = encoder_(obs, action);
  for (std::size_t i = 0; i < x.indices.size(); ++i) {
    grad[static_cast<std::size_t>(x.indices[i])] += coeff * x.values[i];
  }
}

std::unique_ptr<TrainableQ> LinearQ::clone() const {
  return std::make_unique<LinearQ>(*this);
}

MlpQ::MlpQ(MlpSpec spec, ParamVector params)
    : spec_(std::move(spec)), params_(std::move(params)) {
  spec_.validate();
  if (params_.size() != spec_.param_count()) {
    throw std::invalid_argument("MlpQ: parameter count mismatch");
  }
}

MlpQ MlpQ::with_init(MlpSpec spec, SplitMix64& rng) {
  ParamVector p = init_mlp_params(spec, rng);
  return MlpQ(std::move(spec), std::move(p));
}

double MlpQ::evaluate(const Observation& obs, int action) const {
  return mlp_forward(spec_, params_, obs.vec)[static_cast<std::size_t>(action)];
}

double MlpQ::evaluate_at(const ParamSnapshot& snap, const Observation& obs,
                         int action) const {
  ParamVector p;
  p.values = snap;
  p.shapes = params_.shapes;
  return mlp_forward(spec_, p, obs.vec)[static_cast<std::size_t>(action)];
}

void MlpQ::set_params(std::vector<double> values) {
  if (values.size() != params_.size()) {
    throw std::invalid_argument("MlpQ: parameter length mismatch");
  }
  params_.values = std::move(values);
}

void MlpQ::accumulate_value_gradient(const Observation& obs, int action,
                                     double coeff, std::vector<double>& grad) const {
  ParamVector g = mlp_gradient(spec_, params_, obs.vec, action);
  for (std::size_t i = 0; i < g.size(); ++i) grad[i] += coeff * g.values[i];
}

std::unique_ptr<TrainableQ> MlpQ::clone() const {
  return std::make_unique<MlpQ>(*this);
}

LinearV::LinearV(StateFeatureEncoder encoder, int feature_dim)
    : encoder_(std::move(encoder)),
      feature_dim_(feature_dim),
      weights_(static_cast<std::size_t>(feature_dim), 0.0) {}

LinearV LinearV::tile_coded(TileCodingSpec spec) {
  spec.validate();
  if (spec.num_actions != 1) {
    throw std::invalid_argument("LinearV: state-value tile coding needs num_actions 1");
  }
  int dim = spec.feature_dim();
  auto enc = [spec = std::move(spec)](const Observation& obs) {
    return tile_encode(spec, obs.vec, 0);
  };
  return LinearV(enc, dim);
}

FeatureVector LinearV::features(const Observation& obs) const { return encoder_(obs); }

double LinearV::evaluate(const Observation& obs) const {
  return evaluate_at(weights_, obs);
}

double LinearV::evaluate_at(const ParamSnapshot& snap, const Observation& obs) const {
  FeatureVector x = encoder_(obs);
  double v = 0.0;
  for (std::size_t i = 0; i < x.indices.size(); ++i) {
    v += snap[static_cast<std::size_t>(x.indices[i])] * x.values[i];
  }
  return v;
}

void LinearV::set_params(std::vector<double> values) {
  if (values.size() != weights_.size()) {
    throw std::invalid_argument("LinearV: parameter length mismatch");
  }
  weights_ = std::move(values);
}

void LinearV::accumulate_value_gradient(const Observation& obs, double coeff,
                                        std::vector<double>& grad) const {
  FeatureVector x = encoder_(obs);
  for (std::size_t i = 0; i < x.indices.size(); ++i) {
    grad[static_cast<std::size_t>(x.indices[i])] += coeff * x.values[i];
  }
}

MlpV::MlpV(MlpSpec spec, ParamVector params)
    : spec_(std::move(spec)), params_(std::move(params)) {
  spec_.validate();
  if (spec_.output_dim != 1) {
    throw std::invalid_argument("MlpV: state-value network needs output_dim 1");
  }
  if (params_.size() != spec_.param_count()) {
    throw std::invalid_argument("MlpV: parameter count mismatch");
  }
}

MlpV MlpV::with_init(MlpSpec spec, SplitMix64& rng) {
  ParamVector p = init_mlp_params(spec, rng);
  return MlpV(std::move(spec), std::move(p));
}

double MlpV::evaluate(const Observation& obs) const {
  return mlp_forward(spec_, params_, obs.vec)[0];
}

double MlpV::evaluate_at(const ParamSnapshot& snap, const Observation& obs) const {
  ParamVector p;
  p.values = snap;
  p.shapes = params_.shapes;
  return mlp_forward(spec_, p, obs.vec)[0];
}

void MlpV::set_params(std::vector<double> values) {
  if (values.size() != params_.size()) {
    throw std::invalid_argument("MlpV: parameter length mismatch");
  }
  params_.values = std::move(values);
}

void MlpV::accumulate_value_gradient(const Observation& obs, double coeff,
                                     std::vector<double>& grad) const {
  ParamVector g = mlp_gradient(spec_, params_, obs.vec, 0);
  for (std::size_t i = 0; i < g.size(); ++i) grad[i] += coeff * g.values[i];
}

}  // namespace tdlab
