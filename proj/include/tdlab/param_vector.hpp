#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace tdlab {

struct LayerShape {
  int rows = 0;
  int cols = 0;
};

/// Flat parameter store with per-layer shape metadata. Layers are laid out
/// back to back: weight matrix (row-major), then its bias column.
struct ParamVector {
  std::vector<double> values;
  std::vector<LayerShape> shapes;

  std::size_t size() const { return values.size(); }

  static std::size_t element_count(const std::vector<LayerShape>& shapes) {
    std::size_t n = 0;
    for (const auto& s : shapes) {
      n += static_cast<std::size_t>(s.rows) * static_cast<std::size_t>(s.cols);
    }
    return n;
  }

  bool shapes_match() const {
    return shapes.empty() || element_count(shapes) == values.size();
  }

  bool all_finite() const {
    for (double v : values) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }
};

}  // namespace tdlab
