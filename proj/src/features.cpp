#include "tdlab/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tdlab {

double FeatureVector::squared_norm() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return s;
}

double FeatureVector::dot(const FeatureVector& other) const {
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < indices.size() && j < other.indices.size()) {
    if (indices[i] == other.indices[j]) {
      s += values[i] * other.values[j];
      ++i;
      ++j;
    } else if (indices[i] < other.indices[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return s;
}

std::vector<double> FeatureVector::to_dense() const {
  std::vector<double> dense(static_cast<std::size_t>(dim), 0.0);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    dense[static_cast<std::size_t>(indices[i])] = values[i];
  }
  return dense;
}

FeatureVector one_hot_encode(int state_id, int action_id, int num_states,
                             int num_actions) {
  if (state_id < 0 || state_id >= num_states || action_id < 0 ||
      action_id >= num_actions) {
    throw std::invalid_argument("one_hot_encode: id out of range");
  }
  FeatureVector f;
  f.dim = num_states * num_actions;
  f.indices = {state_id * num_actions + action_id};
  f.values = {1.0};
  return f;
}

int TileCodingSpec::cells_per_tiling() const {
  int cells = 1;
  for (int d = 0; d < dims(); ++d) cells *= tiles_per_dim;
  return cells;
}

int TileCodingSpec::feature_dim() const {
  return num_actions * num_tilings * cells_per_tiling();
}

void TileCodingSpec::validate() const {
  if (num_tilings <= 0 || tiles_per_dim <= 0 || num_actions <= 0) {
    throw std::invalid_argument("TileCodingSpec: counts must be positive");
  }
  if (state_low.size() != state_high.size() || state_low.empty()) {
    throw std::invalid_argument("TileCodingSpec: bad bounds");
  }
  for (std::size_t d = 0; d < state_low.size(); ++d) {
    if (!(state_low[d] < state_high[d])) {
      throw std::invalid_argument("TileCodingSpec: state_low must be < state_high");
    }
  }
}

FeatureVector tile_encode(const TileCodingSpec& spec, std::span<const double> state,
                          int action_id) {
  spec.validate();
  if (static_cast<int>(state.size()) != spec.dims()) {
    throw std::invalid_argument("tile_encode: state dimension mismatch");
  }
  if (action_id < 0 || action_id >= spec.num_actions) {
    throw std::invalid_argument("tile_encode: action out of range");
  }
  int n_dims = spec.dims();
  int tiles = spec.tiles_per_dim;
  std::vector<double> unit(static_cast<std::size_t>(n_dims));
  for (int d = 0; d < n_dims; ++d) {
    double lo = spec.state_low[static_cast<std::size_t>(d)];
    double hi = spec.state_high[static_cast<std::size_t>(d)];
    double s = std::clamp(state[static_cast<std::size_t>(d)], lo, hi);
    unit[static_cast<std::size_t>(d)] = (s - lo) / (hi - lo);
  }
  FeatureVector f;
  f.dim = spec.feature_dim();
  f.indices.reserve(static_cast<std::size_t>(spec.num_tilings));
  double value = spec.normalize ? 1.0 / std::sqrt(static_cast<double>(spec.num_tilings)) : 1.0;
  int cells = spec.cells_per_tiling();
  for (int t = 0; t < spec.num_tilings; ++t) {
    double shift = static_cast<double>(t) / spec.num_tilings;
    int cell = 0;
    for (int d = 0; d < n_dims; ++d) {
      int c = static_cast<int>(std::floor(unit[static_cast<std::size_t>(d)] * tiles + shift));
      c = std::clamp(c, 0, tiles - 1);
      cell = cell * tiles + c;
    }
    f.indices.push_back((action_id * spec.num_tilings + t) * cells + cell);
    f.values.push_back(value);
  }
  return f;
}

int GridDiscretizer::num_cells() const {
  int n = 1;
  for (int b : bins) n *= b;
  return n;
}

int GridDiscretizer::cell_id(std::span<const double> state) const {
  if (state.size() != bins.size()) {
    throw std::invalid_argument("GridDiscretizer: state dimension mismatch");
  }
  int id = 0;
  for (std::size_t d = 0; d < bins.size(); ++d) {
    double s = std::clamp(state[d], low[d], high[d]);
    double unit = (s - low[d]) / (high[d] - low[d]);
    int c = std::clamp(static_cast<int>(std::floor(unit * bins[d])), 0, bins[d] - 1);
    id = id * bins[d] + c;
  }
  return id;
}

}  // namespace tdlab
