#pragma once

namespace tdlab {

enum class LossKind { mean_square_value, smooth_l1 };

/// Critic loss selector. `lambda` is the quadratic/linear crossover of the
/// smooth L1 loss and must be positive when that loss is selected.
struct LossSpec {
  LossKind kind = LossKind::smooth_l1;
  double lambda = 1.0;
};

/// Quadratic x^2/(2*lambda) for |x| <= lambda, linear |x| - lambda/2 beyond.
double smooth_l1(double x, double lambda);

/// x/lambda inside the quadratic region, sign(x) outside; continuous at the
/// crossover.
double smooth_l1_derivative(double x, double lambda);

double loss_value(const LossSpec& spec, double residual);
double loss_derivative(const LossSpec& spec, double residual);

}  // namespace tdlab
