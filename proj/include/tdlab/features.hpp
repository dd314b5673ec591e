#pragma once

#include <span>
#include <vector>

namespace tdlab {

/// Sparse feature vector: active positions (strictly increasing) and their
/// values, inside a dense space of `dim` components.
struct FeatureVector {
  std::vector<int> indices;
  std::vector<double> values;
  int dim = 0;

  double squared_norm() const;
  double dot(const FeatureVector& other) const;
  std::vector<double> to_dense() const;
};

/// Single active component of value 1 at state_id * num_actions + action_id.
FeatureVector one_hot_encode(int state_id, int action_id, int num_states,
                             int num_actions);

struct TileCodingSpec {
  int num_tilings = 32;
  int tiles_per_dim = 8;
  std::vector<double> state_low;
  std::vector<double> state_high;
  int num_actions = 1;
  /// true: active values 1/sqrt(num_tilings) so the squared norm is 1;
  /// false: active values 1 so the squared norm is num_tilings.
  bool normalize = true;

  int dims() const { return static_cast<int>(state_low.size()); }
  int cells_per_tiling() const;
  int feature_dim() const;  // num_actions * num_tilings * cells_per_tiling
  void validate() const;
};

/// Tile coding with deterministic offsets: tiling i is shifted by
/// i/num_tilings of one tile width in every dimension. States outside the
/// bounds are clipped. Exactly num_tilings components are active, in the
/// action's disjoint index block (action-major layout).
FeatureVector tile_encode(const TileCodingSpec& spec, std::span<const double> state,
                          int action_id);

/// Uniform grid over a box, for driving tabular agents on continuous states.
/// Out-of-range coordinates are clipped.
struct GridDiscretizer {
  std::vector<double> low;
  std::vector<double> high;
  std::vector<int> bins;

  int num_cells() const;
  int cell_id(std::span<const double> state) const;
};

}  // namespace tdlab
