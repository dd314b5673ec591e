#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "tdlab/core_types.hpp"
#include "tdlab/features.hpp"
#include "tdlab/mlp.hpp"

namespace tdlab {

/// Opaque copy of a value function's parameters at one instant.
using ParamSnapshot = std::vector<double>;

/// State-action value estimate with snapshot/evaluate_at so callers can
/// measure how one update moved the predictions.
class ActionValueFn {
 public:
  virtual ~ActionValueFn() = default;
  virtual int num_actions() const = 0;
  virtual double evaluate(const Observation& obs, int action) const = 0;
  virtual ParamSnapshot snapshot() const = 0;
  virtual double evaluate_at(const ParamSnapshot& snap, const Observation& obs,
                             int action) const = 0;

  double max_value(const Observation& obs) const;
  double max_value_at(const ParamSnapshot& snap, const Observation& obs) const;
  /// Ties break to the lowest action index.
  int argmax_action(const Observation& obs) const;
};

/// Value function that exposes flat parameters and exact value gradients,
/// which is all the semi-gradient updates need.
class TrainableQ : public ActionValueFn {
 public:
  virtual const std::vector<double>& params() const = 0;
  virtual void set_params(std::vector<double> values) = 0;
  /// grad += coeff * d q(obs, action) / d params.
  virtual void accumulate_value_gradient(const Observation& obs, int action,
                                         double coeff,
                                         std::vector<double>& grad) const = 0;
  virtual std::unique_ptr<TrainableQ> clone() const = 0;

  ParamSnapshot snapshot() const override { return params(); }
};

/// Plain table of state-action values, addressed by Observation::state_id.
class TabularQ : public TrainableQ {
 public:
  TabularQ(int num_states, int num_actions, double initial_value = 0.0);

  int num_states() const { return num_states_; }
  int num_actions() const override { return num_actions_; }
  double& at(int state_id, int action_id);
  double at(int state_id, int action_id) const;

  double evaluate(const Observation& obs, int action) const override;
  double evaluate_at(const ParamSnapshot& snap, const Observation& obs,
                     int action) const override;
  const std::vector<double>& params() const override { return table_; }
  void set_params(std::vector<double> values) override;
  void accumulate_value_gradient(const Observation& obs, int action, double coeff,
                                 std::vector<double>& grad) const override;
  std::unique_ptr<TrainableQ> clone() const override;

 private:
  int num_states_;
  int num_actions_;
  std::vector<double> table_;
};

using FeatureEncoder = std::function<FeatureVector(const Observation&, int)>;

/// q(s, a) = w . x(s, a) for a caller-supplied sparse encoder.
class LinearQ : public TrainableQ {
 public:
  LinearQ(FeatureEncoder encoder, int feature_dim, int num_actions);

  static LinearQ one_hot(int num_states, int num_actions);
  static LinearQ tile_coded(TileCodingSpec spec);

  FeatureVector features(const Observation& obs, int action) const;

  int num_actions() const override { return num_actions_; }
  double evaluate(const Observation& obs, int action) const override;
  double evaluate_at(const ParamSnapshot& snap, const Observation& obs,
                     int action) const override;
  const std::vector<double>& params() const override { return weights_; }
  void set_params(std::vector<double> values) override;
  void accumulate_value_gradient(const Observation& obs, int action, double coeff,
                                 std::vector<double>& grad) const override;
  std::unique_ptr<TrainableQ> clone() const override;

 private:
  FeatureEncoder encoder_;
  int feature_dim_;
  int num_actions_;
  std::vector<double> weights_;
};

/// DQN-style head: one network pass yields a value per action.
class MlpQ : public TrainableQ {
 public:
  MlpQ(MlpSpec spec, ParamVector params);
  static MlpQ with_init(MlpSpec spec, SplitMix64& rng);

  const MlpSpec& spec() const { return spec_; }

  int num_actions() const override { return spec_.output_dim; }
  double evaluate(const Observation& obs, int action) const override;
  double evaluate_at(const ParamSnapshot& snap, const Observation& obs,
                     int action) const override;
  const std::vector<double>& params() const override { return params_.values; }
  void set_params(std::vector<double> values) override;
  void accumulate_value_gradient(const Observation& obs, int action, double coeff,
                                 std::vector<double>& grad) const override;
  std::unique_ptr<TrainableQ> clone() const override;

 private:
  MlpSpec spec_;
  ParamVector params_;
};

/// State-value counterpart for actor-critic agents.
class TrainableV {
 public:
  virtual ~TrainableV() = default;
  virtual double evaluate(const Observation& obs) const = 0;
  virtual ParamSnapshot snapshot() const = 0;
  virtual double evaluate_at(const ParamSnapshot& snap, const Observation& obs) const = 0;
  virtual const std::vector<double>& params() const = 0;
  virtual void set_params(std::vector<double> values) = 0;
  virtual void accumulate_value_gradient(const Observation& obs, double coeff,
                                         std::vector<double>& grad) const = 0;
};

using StateFeatureEncoder = std::function<FeatureVector(const Observation&)>;

class LinearV : public TrainableV {
 public:
  LinearV(StateFeatureEncoder encoder, int feature_dim);
  static LinearV tile_coded(TileCodingSpec spec);  // spec.num_actions must be 1

  FeatureVector features(const Observation& obs) const;

  double evaluate(const Observation& obs) const override;
  ParamSnapshot snapshot() const override { return weights_; }
  double evaluate_at(const ParamSnapshot& snap, const Observation& obs) const override;
  const std::vector<double>& params() const override { return weights_; }
  void set_params(std::vector<double> values) override;
  void accumulate_value_gradient(const Observation& obs, double coeff,
                                 std::vector<double>& grad) const override;

 private:
  StateFeatureEncoder encoder_;
  int feature_dim_;
  std::vector<double> weights_;
};

class MlpV : public TrainableV {
 public:
  MlpV(MlpSpec spec, ParamVector params);  // spec.output_dim must be 1
  static MlpV with_init(MlpSpec spec, SplitMix64& rng);

  double evaluate(const Observation& obs) const override;
  ParamSnapshot snapshot() const override { return params_.values; }
  double evaluate_at(const ParamSnapshot& snap, const Observation& obs) const override;
  const std::vector<double>& params() const override { return params_.values; }
  void set_params(std::vector<double> values) override;
  void accumulate_value_gradient(const Observation& obs, double coeff,
                                 std::vector<double>& grad) const override;

 private:
  MlpSpec spec_;
  ParamVector params_;
};

}  // namespace tdlab
