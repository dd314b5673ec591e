#pragma once

#include <functional>
#include <vector>

#include "tdlab/mdp.hpp"
#include "tdlab/param_vector.hpp"

namespace tdlab {
namespace oracle {

// Independent brute-force references. These deliberately share no update
// code with the learning modules they check.

/// Optimal state-action values by value iteration, flattened [s][a].
/// Requires gamma < 1; iterates until the sup-norm Bellman residual is
/// below `tolerance`.
std::vector<double> value_iteration(const MdpSpec& spec, double tolerance);

/// Sup-norm of Q - T(Q) under the Bellman optimality operator.
double bellman_residual(const MdpSpec& spec, const std::vector<double>& q);

/// Greedy policy matrix pi(a|s) (deterministic rows) from flattened Q values.
std::vector<double> greedy_policy(const MdpSpec& spec, const std::vector<double>& q);

/// Stationary distribution of the policy's chain via damped power iteration
/// (0.5 (P + I)); the damping handles periodic chains such as swap rings.
/// Requires a single recurrent class, verified by reachability.
std::vector<double> stationary_distribution(const MdpSpec& spec,
                                            const std::vector<double>& policy);

/// Long-run average reward sum_s d(s) sum_a pi(a|s) E[r | s, a].
double average_reward_oracle(const MdpSpec& spec, const std::vector<double>& policy);

/// Central finite differences per coordinate.
ParamVector finite_diff_gradient(const std::function<double(const ParamVector&)>& f,
                                 const ParamVector& params, double h);

}  // namespace oracle
}  // namespace tdlab
