#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tdlab {

/// What an agent sees. Finite-state environments set `state_id` (and also a
/// one-hot `vec` so network agents can run on them); continuous environments
/// set only `vec`.
struct Observation {
  int state_id = -1;
  std::vector<double> vec;
};

struct StepResult {
  Observation next_observation;
  double reward = 0.0;
  bool terminal = false;
  bool truncated = false;
};

/// One agent-environment interaction. `action_vec` is used by
/// continuous-action agents; discrete agents use `action`.
struct Transition {
  Observation state;
  int action = 0;
  std::vector<double> action_vec;
  double reward = 0.0;
  Observation next_state;
  bool terminal = false;
};

using Batch = std::vector<Transition>;

/// Raised for invalid experiment / agent configurations; the CLI maps this
/// to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tdlab
