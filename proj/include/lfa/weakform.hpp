#pragma once

#include <functional>
#include <string>

#include "lfa/basis.hpp"
#include "lfa/nodes.hpp"

namespace lfa {

/// Pointwise bilinear form: at each quadrature point, a square block acting on
/// (u, grad u) of every component. Block rows/columns are ordered component
/// outermost, then [value, d/dx_0, ..., d/dx_{d-1}]. The block already folds
/// in the quadrature weight and the affine map for elements of size `h`.
struct WeakForm {
  std::string name;
  int components = 1;
  int dimension = 1;
  double h = 1.0;
  std::function<Matrix(const Vector& point, double weight)> block;

  int fields_per_component() const { return 1 + dimension; }
  int block_size() const { return components * fields_per_component(); }
};

/// Isotropic linear elastic material.
struct ElasticityModel {
  double young = 1.0;
  double poisson = 0.4;
  double lambda = 0.0;
  double mu = 0.0;

  ElasticityModel() : ElasticityModel(1.0, 0.4) {}
  ElasticityModel(double young_modulus, double poisson_ratio) : young(young_modulus), poisson(poisson_ratio) {
    require(young > 0.0, "elasticity: Young's modulus must be positive");
    require(poisson > 0.0 && poisson < 0.5, "elasticity: Poisson ratio must lie in (0, 0.5)");
    lambda = young * poisson / ((1.0 + poisson) * (1.0 - 2.0 * poisson));
    mu = young / (2.0 * (1.0 + poisson));
  }

  /// C_ijkl = lambda d_ij d_kl + mu (d_ik d_jl + d_il d_jk)
  double stiffness(int i, int j, int k, int l) const {
    const auto delta = [](int a, int b) { return a == b ? 1.0 : 0.0; };
    return lambda * delta(i, j) * delta(k, l) + mu * (delta(i, k) * delta(j, l) + delta(i, l) * delta(j, k));
  }
};

namespace detail {
// Reference-to-physical factors for an affine map of [-1,1]^d onto [0,h]^d:
// volume scaling (h/2)^d times one (2/h) per gradient.
inline double stiffness_scale(int dimension, double h) { return std::pow(h / 2.0, dimension) * (2.0 / h) * (2.0 / h); }
}  // namespace detail

inline WeakForm laplacian_weakform(int dimension, double h = 1.0) {
  require(dimension >= 1 && dimension <= 3, "laplacian: dimension must be 1, 2 or 3");
  require(h > 0.0, "laplacian: element size must be positive");
  WeakForm wf;
  wf.name = "laplacian";
  wf.components = 1;
  wf.dimension = dimension;
  wf.h = h;
  const double scale = detail::stiffness_scale(dimension, h);
  wf.block = [dimension, scale](const Vector&, double weight) {
    Matrix f = Matrix::Zero(1 + dimension, 1 + dimension);
    f.bottomRightCorner(dimension, dimension).diagonal().setConstant(weight * scale);
    return f;
  };
  return wf;
}

/// grad v : C : grad u with one displacement component per dimension. The
/// minor symmetries of C make this act on the symmetric strain only.
inline WeakForm elasticity_weakform(const ElasticityModel& model, int dimension = 3, double h = 1.0) {
  require(dimension >= 1 && dimension <= 3, "elasticity: dimension must be 1, 2 or 3");
  require(h > 0.0, "elasticity: element size must be positive");
  WeakForm wf;
  wf.name = "elasticity";
  wf.components = dimension;
  wf.dimension = dimension;
  wf.h = h;
  const double scale = detail::stiffness_scale(dimension, h);
  const int fields = 1 + dimension;
  Matrix coupling = Matrix::Zero(dimension * fields, dimension * fields);
  for (int c = 0; c < dimension; ++c)
    for (int j = 0; j < dimension; ++j)
      for (int a = 0; a < dimension; ++a)
        for (int b = 0; b < dimension; ++b)
          coupling(c * fields + 1 + j, a * fields + 1 + b) = model.stiffness(c, j, a, b);
  wf.block = [coupling, scale](const Vector&, double weight) -> Matrix { return weight * scale * coupling; };
  return wf;
}

/// Multiplies every block of `wf` by `factor`.
inline WeakForm scaled(WeakForm wf, double factor) {
  auto inner = wf.block;
  wf.block = [inner, factor](const Vector& x, double w) -> Matrix { return factor * inner(x, w); };
  return wf;
}

/// Dense element operator together with the layout of its nodes.
struct ElementOperator {
  Matrix matrix;
  NodeLayout nodes;
  double h = 1.0;

  int size() const { return static_cast<int>(matrix.rows()); }
  int components() const { return nodes.components; }
  int dimension() const { return nodes.dimension; }
};

/// A_e = B^T D B, assembled quadrature point by quadrature point.
inline ElementOperator element_operator(const WeakForm& wf, const ElementBasis& basis) {
  require(wf.dimension == basis.dimension, "element_operator: weak form and basis dimensions differ");
  const int d = basis.dimension;
  const int n = wf.components;
  const int fields = wf.fields_per_component();
  const int nodes = basis.num_nodes();
  const int points = basis.num_points();

  ElementOperator op;
  op.h = wf.h;
  op.nodes = make_layout(normalize_nodes(basis.nodes1d), d, n);
  op.matrix = Matrix::Zero(n * nodes, n * nodes);

  Matrix phi(fields, nodes);
  for (int k = 0; k < points; ++k) {
    phi.row(0) = basis.interp.row(k);
    for (int a = 0; a < d; ++a) phi.row(1 + a) = basis.grad.row(a * points + k);
    const Vector x = basis.quadrature_points.row(k).transpose();
    const Matrix f = wf.block(x, basis.weights(k));
    require(f.rows() == wf.block_size() && f.cols() == wf.block_size(),
            "element_operator: weak form block has the wrong size");
    for (int c = 0; c < n; ++c)
      for (int a = 0; a < n; ++a) {
        const auto fca = f.block(c * fields, a * fields, fields, fields);
        if (fca.isZero(0.0)) continue;
        op.matrix.block(c * nodes, a * nodes, nodes, nodes).noalias() += phi.transpose() * fca * phi;
      }
  }
  return op;
}

}  // namespace lfa
