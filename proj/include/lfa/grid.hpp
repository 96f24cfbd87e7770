#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "lfa/linalg.hpp"

namespace lfa {

/// Where samples sit inside each of the `resolution` cells of [-pi/2, 3pi/2).
/// Cell-centered grids never hit theta = 0; vertex grids start at -pi/2 and do.
enum class GridPlacement { cell, vertex };

inline std::string to_string(GridPlacement placement) { return placement == GridPlacement::cell ? "cell" : "vertex"; }

inline GridPlacement parse_placement(const std::string& text) {
  if (text == "cell") return GridPlacement::cell;
  if (text == "vertex") return GridPlacement::vertex;
  throw InvalidArgument("unknown grid placement '" + text + "' (expected cell or vertex)");
}

inline std::vector<double> theta_axis(int resolution, GridPlacement placement) {
  require(resolution >= 1, "theta grid: resolution must be positive");
  const double offset = placement == GridPlacement::cell ? 0.5 : 0.0;
  std::vector<double> axis(resolution);
  // in units of pi first so that vertex grids hit 0 and pi exactly
  for (int j = 0; j < resolution; ++j) axis[j] = std::numbers::pi * (-0.5 + 2.0 * (j + offset) / resolution);
  return axis;
}

/// Tensor grid built from an explicit list of per-axis values.
inline std::vector<Vector> theta_tensor(const std::vector<double>& axis, int dimension) {
  std::vector<Vector> out;
  std::size_t total = 1;
  for (int k = 0; k < dimension; ++k) total *= axis.size();
  for (std::size_t i = 0; i < total; ++i) {
    Vector theta(dimension);
    std::size_t rest = i;
    for (int k = dimension - 1; k >= 0; --k) {
      theta(k) = axis[rest % axis.size()];
      rest /= axis.size();
    }
    out.push_back(theta);
  }
  return out;
}

/// Tensor grid over [-pi/2, 3pi/2)^d, last axis fastest.
inline std::vector<Vector> theta_grid(int resolution, int dimension, GridPlacement placement) {
  return theta_tensor(theta_axis(resolution, placement), dimension);
}

}  // namespace lfa
