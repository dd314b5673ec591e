#include "tdlab/optim.hpp"

#include <cmath>
#include <stdexcept>

#include "tdlab/core_types.hpp"

namespace tdlab {

std::pair<ParamVector, AdamState> optimizer_step(OptimizerKind kind,
                                                 const ParamVector& params,
                                                 const ParamVector& grad,
                                                 double alpha,
                                                 const AdamState* adam) {
  if (grad.size() != params.size()) {
    throw std::invalid_argument("optimizer_step: gradient length mismatch");
  }
  if (alpha <= 0.0) throw std::invalid_argument("optimizer_step: alpha must be positive");

  ParamVector out = params;
  if (kind == OptimizerKind::sgd) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out.values[i] -= alpha * grad.values[i];
    }
    return {std::move(out), adam ? *adam : AdamState{}};
  }

  if (adam == nullptr) throw std::invalid_argument("optimizer_step: adam state required");
  if (adam->m.size() != params.size() || adam->v.size() != params.size()) {
    throw std::invalid_argument("optimizer_step: adam state length mismatch");
  }
  AdamState state = *adam;
  state.step_count += 1;
  double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step_count));
  double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step_count));
  for (std::size_t i = 0; i < out.size(); ++i) {
    double g = grad.values[i];
    state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * g;
    state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * g * g;
    double m_hat = state.m[i] / bc1;
    double v_hat = state.v[i] / bc2;
    out.values[i] -= alpha * m_hat / (std::sqrt(v_hat) + state.eps);
  }
  return {std::move(out), std::move(state)};
}

ParamVector polyak_update(const ParamVector& target, const ParamVector& online,
                          double tau) {
  if (target.size() != online.size()) {
    throw std::invalid_argument("polyak_update: length mismatch");
  }
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw ConfigError("polyak_update: tau must be in (0, 1]");
  }
  ParamVector out = target;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.values[i] = (1.0 - tau) * target.values[i] + tau * online.values[i];
  }
  return out;
}

}  // namespace tdlab
