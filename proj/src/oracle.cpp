#include "tdlab/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace tdlab {
namespace oracle {

namespace {

double q_target(const MdpSpec& spec, const std::vector<double>& q, int s, int a) {
  // E[r | s, a] + gamma * sum_s' p(s'|s,a) max_a' q(s', a'), expectations
  // taken directly over the joint table.
  double acc = 0.0;
  auto row = spec.row(s, a);
  int K = spec.num_rewards();
  for (int next_s = 0; next_s < spec.num_states; ++next_s) {
    double best = q[static_cast<std::size_t>(next_s) * spec.num_actions];
    for (int ap = 1; ap < spec.num_actions; ++ap) {
      best = std::max(best, q[static_cast<std::size_t>(next_s) * spec.num_actions + ap]);
    }
    for (int k = 0; k < K; ++k) {
      double p = row[static_cast<std::size_t>(next_s) * K + k];
      if (p > 0.0) acc += p * (spec.rewards[static_cast<std::size_t>(k)] + spec.gamma * best);
    }
  }
  return acc;
}

}  // namespace

std::vector<double> value_iteration(const MdpSpec& spec, double tolerance) {
  spec.validate();
  if (spec.gamma >= 1.0) {
    throw std::invalid_argument(
        "value_iteration: needs gamma < 1 (use the average-reward oracle instead)");
  }
  std::vector<double> q(static_cast<std::size_t>(spec.num_states) * spec.num_actions, 0.0);
  std::vector<double> next(q.size());
  for (long iter = 0; iter < 1000000; ++iter) {
    double residual = 0.0;
    for (int s = 0; s < spec.num_states; ++s) {
      for (int a = 0; a < spec.num_actions; ++a) {
        std::size_t i = static_cast<std::size_t>(s) * spec.num_actions + a;
        next[i] = q_target(spec, q, s, a);
        residual = std::max(residual, std::fabs(next[i] - q[i]));
      }
    }
    q.swap(next);
    // Iterate change r bounds the Bellman residual of the new iterate by
    // gamma * r, so stopping at `tolerance` is sufficient.
    if (residual < tolerance) break;
  }
  return q;
}

double bellman_residual(const MdpSpec& spec, const std::vector<double>& q) {
  double residual = 0.0;
  for (int s = 0; s < spec.num_states; ++s) {
    for (int a = 0; a < spec.num_actions; ++a) {
      std::size_t i = static_cast<std::size_t>(s) * spec.num_actions + a;
      residual = std::max(residual, std::fabs(q_target(spec, q, s, a) - q[i]));
    }
  }
  return residual;
}

std::vector<double> greedy_policy(const MdpSpec& spec, const std::vector<double>& q) {
  std::vector<double> policy(static_cast<std::size_t>(spec.num_states) * spec.num_actions, 0.0);
  for (int s = 0; s < spec.num_states; ++s) {
    int best_a = 0;
    double best = q[static_cast<std::size_t>(s) * spec.num_actions];
    for (int a = 1; a < spec.num_actions; ++a) {
      double v = q[static_cast<std::size_t>(s) * spec.num_actions + a];
      if (v > best) {
        best = v;
        best_a = a;
      }
    }
    policy[static_cast<std::size_t>(s) * spec.num_actions + best_a] = 1.0;
  }
  return policy;
}

namespace {

// pi-induced chain P(s'|s), plus the single-recurrent-class reachability check.
std::vector<double> policy_chain(const MdpSpec& spec, const std::vector<double>& policy) {
  int n = spec.num_states;
  std::vector<double> P(static_cast<std::size_t>(n) * n, 0.0);
  for (int s = 0; s < n; ++s) {
    for (int a = 0; a < spec.num_actions; ++a) {
      double pa = policy[static_cast<std::size_t>(s) * spec.num_actions + a];
      if (pa == 0.0) continue;
      for (int next_s = 0; next_s < n; ++next_s) {
        P[static_cast<std::size_t>(s) * n + next_s] += pa * spec.next_state_prob(s, a, next_s);
      }
    }
  }
  return P;
}

void check_single_recurrent_class(const std::vector<double>& P, int n) {
  // reach[i][j]: j reachable from i through positive-probability edges.
  std::vector<char> reach(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    reach[static_cast<std::size_t>(i) * n + i] = 1;
    for (int j = 0; j < n; ++j) {
      if (P[static_cast<std::size_t>(i) * n + j] > 0.0) {
        reach[static_cast<std::size_t>(i) * n + j] = 1;
      }
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!reach[static_cast<std::size_t>(i) * n + k]) continue;
      for (int j = 0; j < n; ++j) {
        if (reach[static_cast<std::size_t>(k) * n + j]) {
          reach[static_cast<std::size_t>(i) * n + j] = 1;
        }
      }
    }
  }
  // Recurrent state: every state it reaches, reaches it back.
  std::vector<int> recurrent;
  for (int i = 0; i < n; ++i) {
    bool rec = true;
    for (int j = 0; j < n && rec; ++j) {
      if (reach[static_cast<std::size_t>(i) * n + j] &&
          !reach[static_cast<std::size_t>(j) * n + i]) {
        rec = false;
      }
    }
    if (rec) recurrent.push_back(i);
  }
  if (recurrent.empty()) {
    throw std::invalid_argument("average_reward_oracle: no recurrent class found");
  }
  for (std::size_t i = 1; i < recurrent.size(); ++i) {
    if (!reach[static_cast<std::size_t>(recurrent[0]) * n + recurrent[i]] ||
        !reach[static_cast<std::size_t>(recurrent[i]) * n + recurrent[0]]) {
      throw std::invalid_argument("average_reward_oracle: multiple recurrent classes");
    }
  }
}

}  // namespace

std::vector<double> stationary_distribution(const MdpSpec& spec,
                                            const std::vector<double>& policy) {
  spec.validate();
  int n = spec.num_states;
  std::vector<double> P = policy_chain(spec, policy);
  check_single_recurrent_class(P, n);

  std::vector<double> d(static_cast<std::size_t>(n), 1.0 / n);
  std::vector<double> next(static_cast<std::size_t>(n));
  for (long iter = 0; iter < 10000000; ++iter) {
    // Damped step d <- d * 0.5 (P + I), same fixed point, aperiodic chain.
    for (int j = 0; j < n; ++j) next[static_cast<std::size_t>(j)] = 0.5 * d[static_cast<std::size_t>(j)];
    for (int i = 0; i < n; ++i) {
      double di = 0.5 * d[static_cast<std::size_t>(i)];
      if (di == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        next[static_cast<std::size_t>(j)] += di * P[static_cast<std::size_t>(i) * n + j];
      }
    }
    double diff = 0.0;
    for (int j = 0; j < n; ++j) diff += std::fabs(next[static_cast<std::size_t>(j)] - d[static_cast<std::size_t>(j)]);
    d.swap(next);
    if (diff < 1e-13) break;
  }
  double total = 0.0;
  for (double v : d) total += v;
  for (double& v : d) v /= total;
  return d;
}

double average_reward_oracle(const MdpSpec& spec, const std::vector<double>& policy) {
  std::vector<double> d = stationary_distribution(spec, policy);
  double r_bar = 0.0;
  for (int s = 0; s < spec.num_states; ++s) {
    for (int a = 0; a < spec.num_actions; ++a) {
      double pa = policy[static_cast<std::size_t>(s) * spec.num_actions + a];
      if (pa > 0.0) r_bar += d[static_cast<std::size_t>(s)] * pa * spec.expected_reward(s, a);
    }
  }
  return r_bar;
}

ParamVector finite_diff_gradient(const std::function<double(const ParamVector&)>& f,
                                 const ParamVector& params, double h) {
  if (h <= 0.0) throw std::invalid_argument("finite_diff_gradient: h must be positive");
  ParamVector grad = params;
  ParamVector probe = params;
  for (std::size_t i = 0; i < params.size(); ++i) {
    double original = params.values[i];
    probe.values[i] = original + h;
    double up = f(probe);
    probe.values[i] = original - h;
    double down = f(probe);
    probe.values[i] = original;
    grad.values[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

}  // namespace oracle
}  // namespace tdlab
