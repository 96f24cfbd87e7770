#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lfa/twogrid.hpp"

namespace lfa {

/// Largest number of unknowns the dense periodic oracle will assemble.
inline constexpr int kOracleMaxUnknowns = 20000;

/// N^d copies of one element operator on a periodic lattice, assembled densely.
struct PeriodicProblem {
  ElementOperator element;
  int elements = 0;  // per axis
  Matrix matrix;
  std::vector<std::vector<int>> dofs;  // global index of every element node, per element

  int dimension() const { return element.dimension(); }
  int components() const { return element.components(); }
  int size() const { return static_cast<int>(matrix.rows()); }
  int points_per_axis() const { return elements * element.nodes.intervals; }
};

namespace detail {

inline int power(int base, int exponent) {
  int out = 1;
  for (int k = 0; k < exponent; ++k) out *= base;
  return out;
}

// Global indices of each element's nodes; a node at lattice position i of
// element e sits at (e * P + i) mod (N * P) along every axis.
inline std::vector<std::vector<int>> periodic_dofs(const NodeLayout& layout, int elements) {
  const int d = layout.dimension;
  const int axis = elements * layout.intervals;
  const int per_component = power(axis, d);
  const int count = power(elements, d);
  std::vector<std::vector<int>> out(count, std::vector<int>(layout.size()));
  std::vector<int> cell(d);
  for (int e = 0; e < count; ++e) {
    int rest = e;
    for (int k = d - 1; k >= 0; --k) {
      cell[k] = rest % elements;
      rest /= elements;
    }
    for (int i = 0; i < layout.size(); ++i) {
      int index = 0;
      for (int k = 0; k < d; ++k) index = index * axis + (cell[k] * layout.intervals + layout.lattice(i, k)) % axis;
      out[e][i] = layout.component[i] * per_component + index;
    }
  }
  return out;
}

inline int periodic_size(const NodeLayout& layout, int elements) {
  return layout.components * power(elements * layout.intervals, layout.dimension);
}

}  // namespace detail

inline PeriodicProblem assemble_periodic(const ElementOperator& ae, int elements) {
  require(elements >= 3, "periodic assembly: need at least 3 elements per axis");
  const int size = detail::periodic_size(ae.nodes, elements);
  require(size <= kOracleMaxUnknowns,
          "periodic assembly: " + std::to_string(size) + " unknowns exceed the cap of " +
              std::to_string(kOracleMaxUnknowns));
  PeriodicProblem out;
  out.element = ae;
  out.elements = elements;
  out.dofs = detail::periodic_dofs(ae.nodes, elements);
  out.matrix = Matrix::Zero(size, size);
  for (const auto& map : out.dofs)
    for (int i = 0; i < ae.size(); ++i)
      for (int j = 0; j < ae.size(); ++j) out.matrix(map[i], map[j]) += ae.matrix(i, j);
  return out;
}

inline PeriodicProblem assemble_periodic(const WeakForm& wf, const ElementBasis& basis, int elements) {
  return assemble_periodic(element_operator(wf, basis), elements);
}

/// Assembled prolongation: the element transfers summed over all elements.
/// The 1/multiplicity scaling makes shared fine nodes receive exactly one
/// interpolated value.
inline Matrix assemble_periodic_transfer(const TransferPair& tp, int elements) {
  const auto fine = detail::periodic_dofs(tp.fine, elements);
  const auto coarse = detail::periodic_dofs(tp.coarse, elements);
  Matrix p = Matrix::Zero(detail::periodic_size(tp.fine, elements), detail::periodic_size(tp.coarse, elements));
  for (std::size_t e = 0; e < fine.size(); ++e)
    for (int i = 0; i < tp.prolongation.rows(); ++i)
      for (int j = 0; j < tp.prolongation.cols(); ++j) p(fine[e][i], coarse[e][j]) += tp.prolongation(i, j);
  return p;
}

/// The N^d discrete frequencies 2 pi k / N resolved by an N-periodic lattice.
inline std::vector<Vector> periodic_frequencies(int elements, int dimension) {
  std::vector<double> axis(elements);
  for (int k = 0; k < elements; ++k) axis[k] = 2.0 * std::numbers::pi * k / elements;
  return theta_tensor(axis, dimension);
}

/// Largest mismatch between the sorted eigenvalues of the assembled operator
/// and the union of symbol eigenvalues over the discrete frequencies.
inline double circulant_eig_check(const PeriodicProblem& problem, const OperatorSymbol& symbol) {
  require(symbol.dimension() == problem.dimension(), "circulant check: dimension mismatch");
  const auto thetas = periodic_frequencies(problem.elements, problem.dimension());
  require(static_cast<int>(thetas.size()) * symbol.rows() == problem.size(), "circulant check: size mismatch");
  const bool symmetric = max_abs(Matrix(problem.matrix - problem.matrix.transpose())) <= 1e-12 * max_abs(problem.matrix);

  if (symmetric) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(problem.matrix, Eigen::EigenvaluesOnly);
    std::vector<double> assembled(solver.eigenvalues().begin(), solver.eigenvalues().end());
    std::vector<double> local;
    for (const auto& theta : thetas) {
      const Vector values = hermitian_eigenvalues(symbol(theta));
      local.insert(local.end(), values.begin(), values.end());
    }
    std::sort(assembled.begin(), assembled.end());
    std::sort(local.begin(), local.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < local.size(); ++i) worst = std::max(worst, std::abs(assembled[i] - local[i]));
    return worst;
  }

  // Non-symmetric operators: greedy nearest matching of complex eigenvalues.
  const CVector assembled = eigenvalues(problem.matrix.cast<Complex>());
  std::vector<Complex> remaining(assembled.begin(), assembled.end());
  double worst = 0.0;
  for (const auto& theta : thetas) {
    const CVector values = eigenvalues(symbol(theta));
    for (const Complex& v : values) {
      auto best = std::min_element(remaining.begin(), remaining.end(),
                                   [&](const Complex& a, const Complex& b) { return std::abs(a - v) < std::abs(b - v); });
      worst = std::max(worst, std::abs(*best - v));
      remaining.erase(best);
    }
  }
  return worst;
}

struct OracleSettings {
  int elements = 32;    // per axis
  int iterations = 100;
  int trials = 3;
  unsigned seed = 20240101;
  double bailout = 1e12;
};

struct OracleResult {
  double measured = 0.0;
  int elements = 0;
  int iterations = 0;
  int unknowns = 0;
  bool diverged = false;
};

/// Assembled operators of a two-grid configuration on an N-periodic lattice.
class PeriodicTwoGrid {
 public:
  PeriodicTwoGrid(const TwoGrid& tg, int elements)
      : fine_(assemble_periodic(tg.fine_operator(), elements)),
        coarse_(assemble_periodic(tg.coarse_operator(), elements)),
        prolongation_(assemble_periodic_transfer(tg.transfer(), elements)),
        smoother_(tg.smoother()) {
    inverse_diagonal_ = fine_.matrix.diagonal().cwiseInverse();
    coarse_pinv_ = pseudo_inverse(coarse_.matrix);
  }

  const PeriodicProblem& fine() const { return fine_; }
  const PeriodicProblem& coarse() const { return coarse_; }
  const Matrix& prolongation() const { return prolongation_; }

  Vector smooth(const Vector& e) const {
    Vector out = e;
    for (int pass = 0; pass < smoother_.spec().passes; ++pass) out = smooth_once(out);
    return out;
  }

  /// One cycle applied to the error: S (I - P A_c^+ P^T A) S e.
  Vector cycle(const Vector& e) const {
    Vector x = smooth(e);
    x -= prolongation_ * (coarse_pinv_ * (prolongation_.transpose() * (fine_.matrix * x)));
    return smooth(x);
  }

  /// Removes the per-component mean, the periodic nullspace of the forms here.
  Vector project(Vector e) const {
    const int n = fine_.components();
    const int block = fine_.size() / n;
    for (int c = 0; c < n; ++c) e.segment(c * block, block).array() -= e.segment(c * block, block).mean();
    return e;
  }

 private:
  static Matrix pseudo_inverse(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
    const Vector& values = solver.eigenvalues();
    const double cutoff = 1e-10 * values.cwiseAbs().maxCoeff();
    Vector inverse = Vector::Zero(values.size());
    for (Eigen::Index i = 0; i < values.size(); ++i)
      if (std::abs(values(i)) > cutoff) inverse(i) = 1.0 / values(i);
    return solver.eigenvectors() * inverse.asDiagonal() * solver.eigenvectors().transpose();
  }

  Vector apply_da(const Vector& x) const { return inverse_diagonal_.cwiseProduct(fine_.matrix * x); }

  Vector smooth_once(const Vector& e) const {
    if (const auto* j = std::get_if<JacobiSmoother>(&smoother_.spec().kind)) return e - j->omega * apply_da(e);
    const int order = std::get<ChebyshevSmoother>(smoother_.spec().kind).order;
    const auto& cc = smoother_.coefficients();
    Vector previous = e;
    Vector current = e - apply_da(e) / cc.alpha;
    for (int k = 2; k <= order; ++k) {
      Vector next = (apply_da(current) - cc.alpha * current - cc.beta[k - 2] * previous) / cc.gamma[k - 1];
      previous = std::move(current);
      current = std::move(next);
    }
    return current;
  }

  PeriodicProblem fine_;
  PeriodicProblem coarse_;
  Matrix prolongation_;
  SmootherSymbol smoother_;
  Vector inverse_diagonal_;
  Matrix coarse_pinv_;
};

/// Asymptotic error reduction per cycle measured by power iteration on
/// random initial errors (zero right-hand side). Each trial reports the
/// geometric mean of its last five reduction ratios; the worst trial wins.
inline OracleResult measured_two_grid_factor(const TwoGrid& tg, const OracleSettings& settings) {
  require(settings.iterations >= 20, "oracle: need at least 20 iterations");
  require(settings.trials >= 1, "oracle: need at least one trial");
  const PeriodicTwoGrid problem(tg, settings.elements);
  OracleResult result;
  result.elements = settings.elements;
  result.iterations = settings.iterations;
  result.unknowns = problem.fine().size();

  constexpr int kWindow = 5;
  for (int trial = 0; trial < settings.trials; ++trial) {
    std::mt19937_64 rng(settings.seed + static_cast<unsigned>(trial));
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    Vector e(problem.fine().size());
    for (Eigen::Index i = 0; i < e.size(); ++i) e(i) = uniform(rng);
    e = problem.project(e);
    e /= e.norm();

    std::vector<double> ratios;
    double growth = 0.0;  // log of the accumulated error norm
    bool diverged = false;
    for (int it = 0; it < settings.iterations; ++it) {
      Vector next = problem.project(problem.cycle(e));
      const double ratio = next.norm();
      ratios.push_back(ratio);
      if (ratio == 0.0) break;
      growth += std::log(ratio);
      e = next / ratio;
      if (growth > std::log(settings.bailout)) {
        diverged = true;
        break;
      }
    }
    const std::size_t window = std::min<std::size_t>(kWindow, ratios.size());
    double log_sum = 0.0;
    for (std::size_t i = ratios.size() - window; i < ratios.size(); ++i)
      log_sum += std::log(std::max(ratios[i], std::numeric_limits<double>::min()));
    const double factor = std::exp(log_sum / static_cast<double>(window));
    if (trial == 0 || factor > result.measured) result.measured = factor;
    result.diverged = result.diverged || diverged;
  }
  return result;
}

inline OracleResult measured_two_grid_factor(const TwoGridSpec& spec, const OracleSettings& settings) {
  return measured_two_grid_factor(TwoGrid(spec), settings);
}

}  // namespace lfa
