#include "tdlab/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace tdlab {

std::vector<int> MlpSpec::layer_dims() const {
  std::vector<int> dims;
  dims.reserve(hidden_dims.size() + 2);
  dims.push_back(input_dim);
  dims.insert(dims.end(), hidden_dims.begin(), hidden_dims.end());
  dims.push_back(output_dim);
  return dims;
}

std::size_t MlpSpec::param_count() const {
  auto dims = layer_dims();
  std::size_t n = 0;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    n += static_cast<std::size_t>(dims[l]) * dims[l + 1] + dims[l + 1];
  }
  return n;
}

std::vector<LayerShape> MlpSpec::param_shapes() const {
  auto dims = layer_dims();
  std::vector<LayerShape> shapes;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    shapes.push_back({dims[l + 1], dims[l]});
    shapes.push_back({dims[l + 1], 1});
  }
  return shapes;
}

void MlpSpec::validate() const {
  if (input_dim <= 0 || output_dim <= 0) {
    throw std::invalid_argument("MlpSpec: input_dim and output_dim must be positive");
  }
  for (int h : hidden_dims) {
    if (h <= 0) throw std::invalid_argument("MlpSpec: hidden dims must be positive");
  }
}

ParamVector zero_params(const MlpSpec& spec) {
  spec.validate();
  ParamVector p;
  p.shapes = spec.param_shapes();
  p.values.assign(spec.param_count(), 0.0);
  return p;
}

ParamVector init_mlp_params(const MlpSpec& spec, SplitMix64& rng) {
  ParamVector p = zero_params(spec);
  auto dims = spec.layer_dims();
  std::size_t off = 0;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    int in = dims[l], out = dims[l + 1];
    double bound = std::sqrt(6.0 / (in + out));
    for (int i = 0; i < in * out; ++i) {
      p.values[off + i] = rng.uniform(-bound, bound);
    }
    off += static_cast<std::size_t>(in) * out + out;  // biases stay zero
  }
  return p;
}

namespace {

// Pre- and post-activation values per layer, reused by the backward pass.
struct ForwardTrace {
  std::vector<std::vector<double>> activations;  // activations[0] = input
  std::vector<std::vector<double>> pre_acts;     // per non-input layer
};

ForwardTrace forward_trace(const MlpSpec& spec, const ParamVector& params,
                           std::span<const double> input) {
  spec.validate();
  if (static_cast<int>(input.size()) != spec.input_dim) {
    throw std::invalid_argument("mlp_forward: input length does not match spec");
  }
  if (params.size() != spec.param_count()) {
    throw std::invalid_argument("mlp_forward: parameter count does not match spec");
  }
  auto dims = spec.layer_dims();
  ForwardTrace trace;
  trace.activations.emplace_back(input.begin(), input.end());
  std::size_t off = 0;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    int in = dims[l], out = dims[l + 1];
    const double* w = params.values.data() + off;
    const double* b = w + static_cast<std::size_t>(in) * out;
    const auto& x = trace.activations.back();
    std::vector<double> z(out);
    for (int o = 0; o < out; ++o) {
      double acc = b[o];
      const double* row = w + static_cast<std::size_t>(o) * in;
      for (int i = 0; i < in; ++i) acc += row[i] * x[i];
      z[o] = acc;
    }
    bool last = (l + 2 == dims.size());
    std::vector<double> a(out);
    for (int o = 0; o < out; ++o) a[o] = last ? z[o] : (z[o] > 0.0 ? z[o] : 0.0);
    trace.pre_acts.push_back(std::move(z));
    trace.activations.push_back(std::move(a));
    off += static_cast<std::size_t>(in) * out + out;
  }
  return trace;
}

ParamVector backward(const MlpSpec& spec, const ParamVector& params,
                     const ForwardTrace& trace, std::span<const double> out_weights) {
  auto dims = spec.layer_dims();
  for (const auto& z : trace.pre_acts) {
    for (double v : z) {
      if (!std::isfinite(v)) {
        throw std::domain_error("mlp_gradient: non-finite activation");
      }
    }
  }
  ParamVector grad = zero_params(spec);

  // Layer parameter offsets, front to back.
  std::vector<std::size_t> offsets(dims.size() - 1);
  std::size_t off = 0;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    offsets[l] = off;
    off += static_cast<std::size_t>(dims[l]) * dims[l + 1] + dims[l + 1];
  }

  std::vector<double> delta(out_weights.begin(), out_weights.end());
  for (int l = static_cast<int>(dims.size()) - 2; l >= 0; --l) {
    int in = dims[l], out = dims[l + 1];
    const auto& x = trace.activations[static_cast<std::size_t>(l)];
    double* gw = grad.values.data() + offsets[static_cast<std::size_t>(l)];
    double* gb = gw + static_cast<std::size_t>(in) * out;
    for (int o = 0; o < out; ++o) {
      double d = delta[o];
      gb[o] = d;
      double* row = gw + static_cast<std::size_t>(o) * in;
      for (int i = 0; i < in; ++i) row[i] = d * x[i];
    }
    if (l == 0) break;
    const double* w = params.values.data() + offsets[static_cast<std::size_t>(l)];
    const auto& z_prev = trace.pre_acts[static_cast<std::size_t>(l) - 1];
    std::vector<double> next(in, 0.0);
    for (int o = 0; o < out; ++o) {
      double d = delta[o];
      const double* row = w + static_cast<std::size_t>(o) * in;
      for (int i = 0; i < in; ++i) next[i] += d * row[i];
    }
    // ReLU subgradient at exactly 0 is taken as 0.
    for (int i = 0; i < in; ++i) {
      if (z_prev[static_cast<std::size_t>(i)] <= 0.0) next[static_cast<std::size_t>(i)] = 0.0;
    }
    delta = std::move(next);
  }
  return grad;
}

}  // namespace

std::vector<double> mlp_forward(const MlpSpec& spec, const ParamVector& params,
                                std::span<const double> input) {
  return forward_trace(spec, params, input).activations.back();
}

ParamVector mlp_gradient(const MlpSpec& spec, const ParamVector& params,
                         std::span<const double> input, int output_index) {
  if (output_index < 0 || output_index >= spec.output_dim) {
    throw std::invalid_argument("mlp_gradient: output_index out of range");
  }
  std::vector<double> w(static_cast<std::size_t>(spec.output_dim), 0.0);
  w[static_cast<std::size_t>(output_index)] = 1.0;
  auto trace = forward_trace(spec, params, input);
  return backward(spec, params, trace, w);
}

ParamVector mlp_gradient_weighted(const MlpSpec& spec, const ParamVector& params,
                                  std::span<const double> input,
                                  std::span<const double> output_weights) {
  if (static_cast<int>(output_weights.size()) != spec.output_dim) {
    throw std::invalid_argument("mlp_gradient_weighted: weight length mismatch");
  }
  auto trace = forward_trace(spec, params, input);
  return backward(spec, params, trace, output_weights);
}

}  // namespace tdlab
