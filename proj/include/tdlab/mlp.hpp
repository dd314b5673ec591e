#pragma once

#include <span>
#include <vector>

#include "tdlab/param_vector.hpp"
#include "tdlab/rng.hpp"

namespace tdlab {

/// Dense feed-forward architecture: ReLU hidden layers, linear output.
struct MlpSpec {
  int input_dim = 0;
  std::vector<int> hidden_dims;
  int output_dim = 0;

  /// [input_dim, hidden..., output_dim]
  std::vector<int> layer_dims() const;

  /// Sum of in*out + out over consecutive layer pairs.
  std::size_t param_count() const;

  /// Weight (out x in) followed by bias (out x 1) per layer.
  std::vector<LayerShape> param_shapes() const;

  void validate() const;
};

ParamVector zero_params(const MlpSpec& spec);

/// Uniform(-sqrt(6/(fan_in+fan_out))) weights, zero biases.
ParamVector init_mlp_params(const MlpSpec& spec, SplitMix64& rng);

std::vector<double> mlp_forward(const MlpSpec& spec, const ParamVector& params,
                                std::span<const double> input);

/// d output[output_index] / d params via reverse-mode accumulation.
ParamVector mlp_gradient(const MlpSpec& spec, const ParamVector& params,
                         std::span<const double> input, int output_index);

/// d (sum_k weights[k] * output[k]) / d params in a single reverse pass.
ParamVector mlp_gradient_weighted(const MlpSpec& spec, const ParamVector& params,
                                  std::span<const double> input,
                                  std::span<const double> output_weights);

}  // namespace tdlab
