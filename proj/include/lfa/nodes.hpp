#pragma once

#include <vector>

#include "lfa/linalg.hpp"

namespace lfa {

/// Positions of the degrees of freedom of one (macro-)element.
///
/// Rows are ordered components outermost, then tensor index with axis 0
/// slowest. `coords` are normalized to the element frame [0,1]^d; `lattice`
/// holds the integer position 0..intervals of each node along each axis, which
/// identifies nodes shared with neighbouring elements.
struct NodeLayout {
  int components = 1;
  int dimension = 1;
  int intervals = 1;  // nodes per axis minus one
  Matrix coords;
  IndexMatrix lattice;
  std::vector<int> component;

  int size() const { return static_cast<int>(coords.rows()); }
  int nodes_per_component() const { return size() / components; }
};

/// Tensor-product layout from the normalized 1D node positions (which must
/// start at 0 and end at 1).
inline NodeLayout make_layout(const std::vector<double>& nodes01, int dimension, int components) {
  require(nodes01.size() >= 2, "make_layout: need at least two nodes per axis");
  require(dimension >= 1 && dimension <= 3, "make_layout: dimension must be 1, 2 or 3");
  require(components >= 1, "make_layout: need at least one component");
  NodeLayout layout;
  layout.components = components;
  layout.dimension = dimension;
  layout.intervals = static_cast<int>(nodes01.size()) - 1;
  const int per_axis = layout.intervals + 1;
  int per_component = 1;
  for (int k = 0; k < dimension; ++k) per_component *= per_axis;
  const int total = per_component * components;
  layout.coords.resize(total, dimension);
  layout.lattice.resize(total, dimension);
  layout.component.resize(total);
  for (int c = 0; c < components; ++c) {
    for (int i = 0; i < per_component; ++i) {
      const int row = c * per_component + i;
      int rest = i;
      for (int k = dimension - 1; k >= 0; --k) {
        const int idx = rest % per_axis;
        rest /= per_axis;
        layout.lattice(row, k) = idx;
        layout.coords(row, k) = nodes01[idx];
      }
      layout.component[row] = c;
    }
  }
  return layout;
}

/// Maps reference nodes on [-1,1] to [0,1].
inline std::vector<double> normalize_nodes(const std::vector<double>& reference) {
  std::vector<double> out(reference.size());
  for (std::size_t i = 0; i < reference.size(); ++i) out[i] = 0.5 * (reference[i] + 1.0);
  return out;
}

/// Node positions of `m` sub-elements laid side by side in one macro-element,
/// shared interface nodes listed once.
inline std::vector<double> macro_nodes(const std::vector<double>& reference, int m) {
  std::vector<double> out;
  const auto unit = normalize_nodes(reference);
  for (int s = 0; s < m; ++s)
    for (std::size_t i = (s == 0 ? 0 : 1); i < unit.size(); ++i) out.push_back((s + unit[i]) / m);
  out.back() = 1.0;
  return out;
}

}  // namespace lfa
