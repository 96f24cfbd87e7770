#include <cmath>

#include <gtest/gtest.h>

#include "lfa/basis.hpp"

using namespace lfa;

namespace {

double integrate(const QuadratureRule& rule, int power) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * std::pow(rule.points[i], power);
  return sum;
}

double exact_monomial(int power) { return power % 2 == 1 ? 0.0 : 2.0 / (power + 1); }

}  // namespace

TEST(GaussLegendre, OnePointRule) {
  const auto rule = gauss_legendre_rule(1);
  ASSERT_EQ(rule.size(), 1u);
  EXPECT_NEAR(rule.points[0], 0.0, 1e-15);
  EXPECT_NEAR(rule.weights[0], 2.0, 1e-15);
}

TEST(GaussLegendre, TwoAndThreePointRules) {
  const auto two = gauss_legendre_rule(2);
  EXPECT_NEAR(two.points[0], -1.0 / std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(two.points[1], 1.0 / std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(two.weights[0], 1.0, 1e-14);
  EXPECT_NEAR(two.weights[1], 1.0, 1e-14);
  for (int k = 0; k <= 3; ++k) EXPECT_NEAR(integrate(two, k), exact_monomial(k), 1e-14);

  const auto three = gauss_legendre_rule(3);
  EXPECT_NEAR(three.points[0], -std::sqrt(0.6), 1e-14);
  EXPECT_NEAR(three.points[1], 0.0, 1e-14);
  EXPECT_NEAR(three.weights[0], 5.0 / 9.0, 1e-14);
  EXPECT_NEAR(three.weights[1], 8.0 / 9.0, 1e-14);
  for (int k = 0; k <= 5; ++k) EXPECT_NEAR(integrate(three, k), exact_monomial(k), 1e-14);
}

TEST(GaussLegendre, ExactUpToDegreeTwoQMinusOne) {
  for (int q = 1; q <= 18; ++q) {
    const auto rule = gauss_legendre_rule(q);
    double total = 0.0;
    for (double w : rule.weights) {
      EXPECT_GT(w, 0.0);
      total += w;
    }
    EXPECT_NEAR(total, 2.0, 1e-12);
    for (std::size_t i = 1; i < rule.size(); ++i) EXPECT_LT(rule.points[i - 1], rule.points[i]);
    for (int k = 0; k <= 2 * q - 1; ++k) EXPECT_NEAR(integrate(rule, k), exact_monomial(k), 1e-12) << q << " " << k;
  }
}

TEST(GaussLegendre, RejectsEmptyRule) { EXPECT_THROW(gauss_legendre_rule(0), InvalidArgument); }

TEST(GaussLobatto, SmallCounts) {
  EXPECT_EQ(gauss_lobatto_points(2), (std::vector<double>{-1.0, 1.0}));
  const auto three = gauss_lobatto_points(3);
  EXPECT_NEAR(three[1], 0.0, 1e-15);
  const auto five = gauss_lobatto_points(5);
  const double r = std::sqrt(3.0 / 7.0);
  const std::vector<double> expected{-1.0, -r, 0.0, r, 1.0};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(five[i], expected[i], 1e-14);
  EXPECT_THROW(gauss_lobatto_points(1), InvalidArgument);
}

TEST(GaussLobatto, InteriorPointsAreCriticalPointsOfLegendre) {
  // (1 - x^2) P'_n(x) = n (P_{n-1}(x) - x P_n(x)) vanishes at every node
  for (int count = 3; count <= 17; ++count) {
    const int n = count - 1;
    const auto nodes = gauss_lobatto_points(count);
    for (double x : nodes) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      EXPECT_NEAR(n * (p0 - x * p1), 0.0, 1e-11) << count;
    }
  }
}

TEST(Lagrange, LinearBasisAtMidpoint) {
  const auto m = lagrange_matrices({-1.0, 1.0}, {0.0});
  EXPECT_NEAR(m.interp(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(m.interp(0, 1), 0.5, 1e-15);
  EXPECT_NEAR(m.grad(0, 0), -0.5, 1e-15);
  EXPECT_NEAR(m.grad(0, 1), 0.5, 1e-15);
}

TEST(Lagrange, CardinalAtNodeAndHandComputedQuadratic) {
  const auto at_node = lagrange_matrices({-1.0, 0.0, 1.0}, {0.0});
  EXPECT_NEAR(at_node.interp(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(at_node.interp(0, 1), 1.0, 1e-15);
  EXPECT_NEAR(at_node.interp(0, 2), 0.0, 1e-15);

  // l0 = x(x-1)/2, l1 = 1 - x^2, l2 = x(x+1)/2
  const double x = 0.3;
  const auto m = lagrange_matrices({-1.0, 0.0, 1.0}, {x});
  EXPECT_NEAR(m.interp(0, 0), x * (x - 1) / 2, 1e-15);
  EXPECT_NEAR(m.interp(0, 1), 1 - x * x, 1e-15);
  EXPECT_NEAR(m.interp(0, 2), x * (x + 1) / 2, 1e-15);
  EXPECT_NEAR(m.grad(0, 0), x - 0.5, 1e-15);
  EXPECT_NEAR(m.grad(0, 1), -2 * x, 1e-15);
  EXPECT_NEAR(m.grad(0, 2), x + 0.5, 1e-15);
}

TEST(Lagrange, PartitionOfUnityAtGaussPoints) {
  const double g = 1.0 / std::sqrt(3.0);
  const auto m = lagrange_matrices({-1.0, 0.0, 1.0}, {-g, g});
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(m.interp.row(i).sum(), 1.0, 1e-14);
    EXPECT_NEAR(m.grad.row(i).sum(), 0.0, 1e-14);
  }
}

TEST(Lagrange, RejectsDuplicateNodes) {
  EXPECT_THROW(lagrange_matrices({-1.0, 0.0, 0.0}, {0.5}), InvalidArgument);
}

TEST(TensorBasis, OneDimensionalIsUnchanged) {
  const auto line = line_basis(3);
  const auto b = tensor_basis(line, 1);
  EXPECT_EQ((b.interp - line.interp1d).norm(), 0.0);
  EXPECT_EQ((b.grad - line.grad1d).norm(), 0.0);
}

TEST(TensorBasis, BilinearMatchesDirectEvaluation) {
  const auto b = make_basis(1, 2);
  ASSERT_EQ(b.interp.rows(), 4);
  ASSERT_EQ(b.interp.cols(), 4);
  ASSERT_EQ(b.grad.rows(), 8);
  // node (i, j) sits at (x_i, x_j) with axis 0 slowest; phi = l_i(x) l_j(y)
  const auto l = [](int i, double t) { return i == 0 ? (1 - t) / 2 : (1 + t) / 2; };
  const auto dl = [](int i, double) { return i == 0 ? -0.5 : 0.5; };
  for (int q = 0; q < b.num_points(); ++q) {
    const double x = b.quadrature_points(q, 0);
    const double y = b.quadrature_points(q, 1);
    for (int n = 0; n < 4; ++n) {
      const int i = n / 2, j = n % 2;
      EXPECT_NEAR(b.interp(q, n), l(i, x) * l(j, y), 1e-15);
      EXPECT_NEAR(b.grad(q, n), dl(i, x) * l(j, y), 1e-15);
      EXPECT_NEAR(b.grad(4 + q, n), l(i, x) * dl(j, y), 1e-15);
    }
  }
  for (int r = 0; r < 8; ++r) EXPECT_NEAR(b.grad.row(r).sum(), 0.0, 1e-15);
}

TEST(TensorBasis, PartitionOfUnityAllDegreesAndDimensions) {
  for (int d = 1; d <= 3; ++d) {
    for (int p : {1, 2, 3, 4, 6}) {
      const auto b = make_basis(p, d);
      EXPECT_EQ(b.num_points(), static_cast<int>(std::pow(p + 1, d)));
      EXPECT_EQ(b.grad.rows(), d * b.num_points());
      EXPECT_LT((b.interp.rowwise().sum().array() - 1.0).abs().maxCoeff(), 1e-12);
      EXPECT_LT(b.grad.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_NEAR(b.weights.sum(), std::pow(2.0, d), 1e-12);
      EXPECT_DOUBLE_EQ(b.nodes1d.front(), -1.0);
      EXPECT_DOUBLE_EQ(b.nodes1d.back(), 1.0);
    }
  }
}
