#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tdlab/param_vector.hpp"

namespace tdlab {

enum class OptimizerKind { sgd, adam };

/// First/second moment estimates for Adam, same length as the parameter
/// vector they track.
struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  long step_count = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  static AdamState for_params(std::size_t n) {
    AdamState s;
    s.m.assign(n, 0.0);
    s.v.assign(n, 0.0);
    return s;
  }
};

/// One descent step. sgd: params - alpha * grad. adam: bias-corrected moment
/// update. `adam` must be provided iff kind == adam; the returned state has
/// step_count incremented (it is passed through untouched for sgd).
std::pair<ParamVector, AdamState> optimizer_step(OptimizerKind kind,
                                                 const ParamVector& params,
                                                 const ParamVector& grad,
                                                 double alpha,
                                                 const AdamState* adam = nullptr);

/// Elementwise (1 - tau) * target + tau * online, tau in (0, 1].
ParamVector polyak_update(const ParamVector& target, const ParamVector& online,
                          double tau);

}  // namespace tdlab
