#include "tdlab/loss.hpp"

#include <cmath>
#include <stdexcept>

namespace tdlab {

double smooth_l1(double x, double lambda) {
  if (lambda <= 0.0) throw std::invalid_argument("smooth_l1: lambda must be positive");
  double ax = std::fabs(x);
  if (ax <= lambda) return x * x / (2.0 * lambda);
  return ax - 0.5 * lambda;
}

double smooth_l1_derivative(double x, double lambda) {
  if (lambda <= 0.0) throw std::invalid_argument("smooth_l1: lambda must be positive");
  if (std::fabs(x) <= lambda) return x / lambda;
  return x > 0.0 ? 1.0 : -1.0;
}

double loss_value(const LossSpec& spec, double residual) {
  if (spec.kind == LossKind::mean_square_value) return 0.5 * residual * residual;
  return smooth_l1(residual, spec.lambda);
}

double loss_derivative(const LossSpec& spec, double residual) {
  if (spec.kind == LossKind::mean_square_value) return residual;
  return smooth_l1_derivative(residual, spec.lambda);
}

}  // namespace tdlab
