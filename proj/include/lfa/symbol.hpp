#pragma once

#include <cmath>
#include <vector>

#include "lfa/weakform.hpp"

namespace lfa {

/// Fourier mode localization: maps every element node to the mode it shares
/// with its periodic images. Built as I_n (x) Q1 (x) ... (x) Q1 with
/// Q1 = [I_p; e_0].
struct Localization {
  Matrix q;               // binary, rows = element nodes, cols = modes
  std::vector<int> mode;  // column holding the single 1 of each row

  int nodes() const { return static_cast<int>(q.rows()); }
  int modes() const { return static_cast<int>(q.cols()); }
};

inline Localization localization(int intervals, int dimension, int components) {
  require(intervals >= 1, "localization: degree must be positive");
  require(dimension >= 1 && dimension <= 3, "localization: dimension must be 1, 2 or 3");
  require(components >= 1, "localization: need at least one component");
  Matrix q1 = Matrix::Zero(intervals + 1, intervals);
  q1.topRows(intervals).setIdentity();
  q1(intervals, 0) = 1.0;
  Localization loc;
  loc.q = kron(Matrix::Identity(components, components),
               kron_all(std::vector<Matrix>(static_cast<std::size_t>(dimension), q1)));
  loc.mode.resize(loc.q.rows());
  for (Eigen::Index i = 0; i < loc.q.rows(); ++i) {
    Eigen::Index j = 0;
    loc.q.row(i).maxCoeff(&j);
    loc.mode[i] = static_cast<int>(j);
  }
  return loc;
}

inline Localization localization(const NodeLayout& layout) {
  return localization(layout.intervals, layout.dimension, layout.components);
}

/// Symbol of an element-localized operator between two node layouts:
///   Q_rows^T (M .* [exp(i (x_col_j - x_row_i) . theta)]) Q_cols
/// with coordinates in the normalized element frame.
class ElementSymbol {
 public:
  ElementSymbol() = default;
  ElementSymbol(Matrix element, NodeLayout rows, NodeLayout cols)
      : element_(std::move(element)),
        rows_(std::move(rows)),
        cols_(std::move(cols)),
        row_loc_(localization(rows_)),
        col_loc_(localization(cols_)) {
    require(element_.rows() == rows_.size() && element_.cols() == cols_.size(),
            "symbol: element matrix does not match its node layouts");
    require(rows_.dimension == cols_.dimension, "symbol: row and column layouts differ in dimension");
  }

  CMatrix evaluate(const Vector& theta) const {
    require(theta.size() == rows_.dimension, "symbol: frequency has the wrong dimension");
    const CVector row_phase = phases(rows_, theta);
    const CVector col_phase = phases(cols_, theta);
    CMatrix out = CMatrix::Zero(row_loc_.modes(), col_loc_.modes());
    for (Eigen::Index j = 0; j < element_.cols(); ++j) {
      const int cj = col_loc_.mode[j];
      for (Eigen::Index i = 0; i < element_.rows(); ++i) {
        const double v = element_(i, j);
        if (v == 0.0) continue;
        out(row_loc_.mode[i], cj) += v * std::conj(row_phase(i)) * col_phase(j);
      }
    }
    return out;
  }

  CMatrix operator()(const Vector& theta) const { return evaluate(theta); }

  int rows() const { return row_loc_.modes(); }
  int cols() const { return col_loc_.modes(); }
  int dimension() const { return rows_.dimension; }
  const Matrix& element() const { return element_; }
  const NodeLayout& row_nodes() const { return rows_; }
  const NodeLayout& col_nodes() const { return cols_; }
  const Localization& row_localization() const { return row_loc_; }
  const Localization& col_localization() const { return col_loc_; }

 private:
  static CVector phases(const NodeLayout& layout, const Vector& theta) {
    CVector out(layout.size());
    for (int i = 0; i < layout.size(); ++i) {
      const double angle = layout.coords.row(i).dot(theta);
      out(i) = Complex(std::cos(angle), std::sin(angle));
    }
    return out;
  }

  Matrix element_;
  NodeLayout rows_;
  NodeLayout cols_;
  Localization row_loc_;
  Localization col_loc_;
};

using OperatorSymbol = ElementSymbol;

inline OperatorSymbol operator_symbol(const ElementOperator& ae) { return OperatorSymbol(ae.matrix, ae.nodes, ae.nodes); }

inline OperatorSymbol operator_symbol(const ElementOperator& ae, const Localization& loc) {
  require(loc.nodes() == ae.size(), "operator_symbol: localization does not match the element operator");
  return operator_symbol(ae);
}

/// Q^T diag(A_e) Q: the frequency independent symbol of the operator diagonal.
inline CMatrix diagonal_symbol(const ElementOperator& ae, const Localization& loc) {
  require(loc.nodes() == ae.size(), "diagonal_symbol: localization does not match the element operator");
  Vector diag = Vector::Zero(loc.modes());
  for (int i = 0; i < ae.size(); ++i) diag(loc.mode[i]) += ae.matrix(i, i);
  for (Eigen::Index i = 0; i < diag.size(); ++i)
    if (diag(i) == 0.0) throw NumericalError("diagonal_symbol: zero diagonal entry, Jacobi is undefined");
  return diag.cast<Complex>().asDiagonal();
}

inline CMatrix diagonal_symbol(const ElementOperator& ae) { return diagonal_symbol(ae, localization(ae.nodes)); }

}  // namespace lfa
