#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "lfa/linalg.hpp"

namespace lfa {

/// Quadrature on the reference interval [-1, 1].
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
};

namespace detail {

// Legendre polynomial P_n(x) and its derivative by the three-term recurrence.
inline std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  // P'_n = n (x P_n - P_{n-1}) / (x^2 - 1), only used away from the endpoints.
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

constexpr double kNewtonTolerance = 1e-14;
constexpr int kNewtonMaxIterations = 100;

}  // namespace detail

/// q-point Gauss-Legendre rule, exact for polynomials of degree 2q-1.
inline QuadratureRule gauss_legendre_rule(int q) {
  require(q >= 1, "gauss_legendre_rule: need at least one point");
  QuadratureRule rule;
  rule.points.resize(q);
  rule.weights.resize(q);
  for (int i = 0; i < (q + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < detail::kNewtonMaxIterations; ++it) {
      auto [p, d] = detail::legendre(q, x);
      dp = d;
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) < detail::kNewtonTolerance) break;
    }
    dp = detail::legendre(q, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = -x;
    rule.points[q - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[q - 1 - i] = w;
  }
  if (q % 2 == 1) rule.points[q / 2] = 0.0;
  return rule;
}

/// Gauss-Lobatto points: the endpoints plus the roots of P'_{count-1}.
inline std::vector<double> gauss_lobatto_points(int count) {
  require(count >= 2, "gauss_lobatto_points: need at least two points");
  const int n = count - 1;
  std::vector<double> x(count);
  for (int i = 0; i < count; ++i) x[i] = -std::cos(std::numbers::pi * i / n);
  // Newton on (1 - x^2) P'_n(x) written through the Legendre recurrence.
  for (int i = 1; i < n; ++i) {
    double xi = x[i];
    for (int it = 0; it < detail::kNewtonMaxIterations; ++it) {
      double p_prev = 1.0;
      double p = xi;
      for (int k = 2; k <= n; ++k) {
        const double next = ((2.0 * k - 1.0) * xi * p - (k - 1.0) * p_prev) / k;
        p_prev = p;
        p = next;
      }
      const double dx = (xi * p - p_prev) / ((n + 1) * p);
      xi -= dx;
      if (std::abs(dx) < detail::kNewtonTolerance) break;
    }
    x[i] = xi;
  }
  x.front() = -1.0;
  x.back() = 1.0;
  if (count % 2 == 1) x[n / 2] = 0.0;
  return x;
}

struct LagrangeMatrices {
  Matrix interp;
  Matrix grad;
};

/// Values and derivatives of the Lagrange cardinal functions on `nodes`,
/// one row per evaluation point.
inline LagrangeMatrices lagrange_matrices(const std::vector<double>& nodes,
                                          const std::vector<double>& eval_points) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = a + 1; b < n; ++b)
      require(nodes[a] != nodes[b], "lagrange_matrices: duplicate nodes");

  LagrangeMatrices out{Matrix::Zero(eval_points.size(), n), Matrix::Zero(eval_points.size(), n)};
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(eval_points.size()); ++i) {
    const double x = eval_points[i];
    for (Eigen::Index j = 0; j < n; ++j) {
      double value = 1.0;
      double derivative = 0.0;
      for (Eigen::Index m = 0; m < n; ++m) {
        if (m == j) continue;
        const double scale = 1.0 / (nodes[j] - nodes[m]);
        derivative = derivative * (x - nodes[m]) * scale + value * scale;
        value *= (x - nodes[m]) * scale;
      }
      out.interp(i, j) = value;
      out.grad(i, j) = derivative;
    }
  }
  return out;
}

/// A tensor-product H1 Lagrange basis on Gauss-Lobatto nodes, evaluated at
/// Gauss-Legendre points. Axis 0 is the slowest varying tensor index.
struct ElementBasis {
  int degree = 1;
  int dimension = 1;
  std::vector<double> nodes1d;
  QuadratureRule quadrature;  // one-dimensional rule
  Matrix interp1d;
  Matrix grad1d;
  Matrix interp;            // q^d x (p+1)^d
  Matrix grad;              // d q^d x (p+1)^d, block k differentiates axis k
  Vector weights;           // q^d tensor quadrature weights
  Matrix quadrature_points; // q^d x d

  int num_nodes() const { return static_cast<int>(interp.cols()); }
  int num_points() const { return static_cast<int>(interp.rows()); }
};

/// One-dimensional ingredients of a basis, before tensorization.
inline ElementBasis line_basis(int degree) {
  require(degree >= 1, "basis degree must be positive");
  ElementBasis b;
  b.degree = degree;
  b.dimension = 1;
  b.nodes1d = gauss_lobatto_points(degree + 1);
  b.quadrature = gauss_legendre_rule(degree + 1);
  auto lm = lagrange_matrices(b.nodes1d, b.quadrature.points);
  b.interp1d = lm.interp;
  b.grad1d = lm.grad;
  b.interp = b.interp1d;
  b.grad = b.grad1d;
  b.weights = Eigen::Map<const Vector>(b.quadrature.weights.data(), b.quadrature.size());
  b.quadrature_points = Eigen::Map<const Vector>(b.quadrature.points.data(), b.quadrature.size());
  return b;
}

/// Extends the one-dimensional parts of `basis1d` to `dimension` by Kronecker
/// products.
inline ElementBasis tensor_basis(const ElementBasis& basis1d, int dimension) {
  require(dimension >= 1 && dimension <= 3, "tensor_basis: dimension must be 1, 2 or 3");
  ElementBasis b = basis1d;
  b.dimension = dimension;
  const auto d = static_cast<std::size_t>(dimension);
  b.interp = kron_all(std::vector<Matrix>(d, basis1d.interp1d));
  const auto q = basis1d.interp1d.rows();
  const auto qd = b.interp.rows();
  b.grad.resize(dimension * qd, b.interp.cols());
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Matrix> factors(d, basis1d.interp1d);
    factors[k] = basis1d.grad1d;
    b.grad.middleRows(static_cast<Eigen::Index>(k) * qd, qd) = kron_all(factors);
  }
  Vector w1 = Eigen::Map<const Vector>(basis1d.quadrature.weights.data(), q);
  b.weights = kron_all(std::vector<Matrix>(d, Matrix(w1))).reshaped();
  b.quadrature_points.resize(qd, dimension);
  for (Eigen::Index i = 0; i < qd; ++i) {
    Eigen::Index rest = i;
    for (int k = dimension - 1; k >= 0; --k) {
      b.quadrature_points(i, k) = basis1d.quadrature.points[rest % q];
      rest /= q;
    }
  }
  return b;
}

inline ElementBasis make_basis(int degree, int dimension) { return tensor_basis(line_basis(degree), dimension); }

}  // namespace lfa
