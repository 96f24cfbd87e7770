#pragma once

#include <vector>

#include "lfa/symbol.hpp"

namespace lfa {

/// Element-level grid transfer P_e = D_scale B_ctof together with the node
/// layouts of the fine (macro-)element and the coarse element. Both layouts
/// live in the same normalized [0,1]^d frame.
struct TransferPair {
  Matrix interpolation;  // B_ctof
  Vector scale;          // diagonal of D_scale, 1 / fine node multiplicity
  Matrix prolongation;   // P_e
  NodeLayout fine;
  NodeLayout coarse;
  ElementSymbol prolongation_symbol;  // fine rows, coarse columns
  ElementSymbol restriction_symbol;   // coarse rows, fine columns

  int fine_modes() const { return prolongation_symbol.rows(); }
  int coarse_modes() const { return prolongation_symbol.cols(); }
};

/// Reciprocal of the number of periodic element copies sharing each node.
inline Vector inverse_multiplicity(const NodeLayout& layout) {
  const auto loc = localization(layout);
  std::vector<int> count(loc.modes(), 0);
  for (int m : loc.mode) ++count[m];
  Vector out(layout.size());
  for (int i = 0; i < layout.size(); ++i) out(i) = 1.0 / count[loc.mode[i]];
  return out;
}

namespace detail {

inline TransferPair make_transfer(const Matrix& interp1d, NodeLayout fine, NodeLayout coarse) {
  const int d = fine.dimension;
  const int n = fine.components;
  TransferPair tp;
  tp.interpolation =
      kron(Matrix::Identity(n, n), kron_all(std::vector<Matrix>(static_cast<std::size_t>(d), interp1d)));
  tp.scale = inverse_multiplicity(fine);
  tp.prolongation = tp.scale.asDiagonal() * tp.interpolation;
  tp.prolongation_symbol = ElementSymbol(tp.prolongation, fine, coarse);
  tp.restriction_symbol = ElementSymbol(tp.prolongation.transpose(), coarse, fine);
  tp.fine = std::move(fine);
  tp.coarse = std::move(coarse);
  return tp;
}

inline std::vector<double> to_reference(const std::vector<double>& unit) {
  std::vector<double> out(unit.size());
  for (std::size_t i = 0; i < unit.size(); ++i) out[i] = 2.0 * unit[i] - 1.0;
  return out;
}

}  // namespace detail

/// p-multigrid transfer: the coarse Gauss-Lobatto basis evaluated at the fine
/// Gauss-Lobatto nodes. `p_coarse == p_fine` gives the identity injection.
inline TransferPair p_transfer(int p_coarse, int p_fine, int dimension, int components) {
  require(p_coarse >= 1 && p_coarse <= p_fine, "p_transfer: need 1 <= p_coarse <= p_fine");
  const auto coarse_nodes = gauss_lobatto_points(p_coarse + 1);
  const auto fine_nodes = gauss_lobatto_points(p_fine + 1);
  const Matrix b = lagrange_matrices(coarse_nodes, fine_nodes).interp;
  return detail::make_transfer(b, make_layout(normalize_nodes(fine_nodes), dimension, components),
                               make_layout(normalize_nodes(coarse_nodes), dimension, components));
}

/// h-multigrid transfer: a degree p coarse element evaluated at the nodes of
/// a fine macro-element made of m sub-elements per axis.
inline TransferPair h_transfer(int p, int m, int dimension, int components) {
  require(p >= 1, "h_transfer: degree must be positive");
  require(m >= 2, "h_transfer: need at least two sub-elements");
  const auto reference = gauss_lobatto_points(p + 1);
  const auto fine_unit = macro_nodes(reference, m);
  const Matrix b = lagrange_matrices(reference, detail::to_reference(fine_unit)).interp;
  return detail::make_transfer(b, make_layout(fine_unit, dimension, components),
                               make_layout(normalize_nodes(reference), dimension, components));
}

inline CMatrix prolongation_symbol(const TransferPair& tp, const Vector& theta) { return tp.prolongation_symbol(theta); }
inline CMatrix restriction_symbol(const TransferPair& tp, const Vector& theta) { return tp.restriction_symbol(theta); }

/// Assembles m^d copies of a sub-element operator into one macro-element
/// operator; the macro-element is m times larger than the sub-element.
inline ElementOperator h_macro_element(const ElementOperator& sub, int m) {
  require(m >= 2, "h_macro_element: need at least two sub-elements");
  const NodeLayout& sn = sub.nodes;
  const int d = sn.dimension;
  const int n = sn.components;
  const int p = sn.intervals;

  // 1D normalized node positions of the sub-element along the fastest axis
  std::vector<double> unit(p + 1);
  for (int i = 0; i <= p; ++i) unit[i] = sn.coords(i, d - 1);
  std::vector<double> reference = detail::to_reference(unit);

  ElementOperator macro;
  macro.h = sub.h * m;
  macro.nodes = make_layout(macro_nodes(reference, m), d, n);
  macro.matrix = Matrix::Zero(macro.nodes.size(), macro.nodes.size());

  const int macro_axis = m * p + 1;
  const int macro_per_component = macro.nodes.nodes_per_component();
  const auto macro_row = [&](int row, const std::vector<int>& offset) {
    int index = 0;
    for (int k = 0; k < d; ++k) index = index * macro_axis + offset[k] * p + sn.lattice(row, k);
    return sn.component[row] * macro_per_component + index;
  };

  int copies = 1;
  for (int k = 0; k < d; ++k) copies *= m;
  std::vector<int> offset(d);
  std::vector<int> map(sn.size());
  for (int s = 0; s < copies; ++s) {
    int rest = s;
    for (int k = d - 1; k >= 0; --k) {
      offset[k] = rest % m;
      rest /= m;
    }
    for (int i = 0; i < sn.size(); ++i) map[i] = macro_row(i, offset);
    for (int i = 0; i < sn.size(); ++i)
      for (int j = 0; j < sn.size(); ++j) macro.matrix(map[i], map[j]) += sub.matrix(i, j);
  }
  return macro;
}

}  // namespace lfa
