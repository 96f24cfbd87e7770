#pragma once

#include <algorithm>
#include <numbers>
#include <variant>
#include <vector>

#include "lfa/grid.hpp"
#include "lfa/symbol.hpp"

namespace lfa {

struct JacobiSmoother {
  double omega = 1.0;
};

/// Chebyshev semi-iteration on the Jacobi preconditioned operator, targeting
/// [lower_factor, upper_factor] * lambda_max_estimate.
struct ChebyshevSmoother {
  int order = 2;
  double lower_factor = 0.1;
  double upper_factor = 1.0;
};

struct SmootherSpec {
  std::variant<JacobiSmoother, ChebyshevSmoother> kind = JacobiSmoother{};
  int passes = 1;

  bool is_jacobi() const { return std::holds_alternative<JacobiSmoother>(kind); }
  bool is_chebyshev() const { return std::holds_alternative<ChebyshevSmoother>(kind); }

  void validate() const {
    require(passes >= 0, "smoother: number of passes must be non-negative");
    if (const auto* j = std::get_if<JacobiSmoother>(&kind)) {
      require(j->omega > 0.0, "smoother: Jacobi weight must be positive");
    } else {
      const auto& c = std::get<ChebyshevSmoother>(kind);
      require(c.order >= 1, "smoother: Chebyshev order must be at least 1");
      require(c.lower_factor >= 0.0 && c.lower_factor < c.upper_factor,
              "smoother: Chebyshev lower factor must lie below the upper factor");
    }
  }
};

inline SmootherSpec jacobi(double omega, int passes = 1) { return {JacobiSmoother{omega}, passes}; }
inline SmootherSpec chebyshev(int order, double lower = 0.1, double upper = 1.0, int passes = 1) {
  return {ChebyshevSmoother{order, lower, upper}, passes};
}

/// Three-term recurrence coefficients of the Chebyshev error polynomial.
struct ChebyshevCoefficients {
  double alpha = 0.0;  // interval center
  double c = 0.0;      // interval half-width
  std::vector<double> beta;   // beta_0 .. beta_{k-2}
  std::vector<double> gamma;  // gamma_0 .. gamma_{k-1}
};

inline ChebyshevCoefficients chebyshev_coefficients(int order, double lambda_min, double lambda_max) {
  require(order >= 1, "chebyshev: order must be at least 1");
  require(lambda_min >= 0.0 && lambda_min < lambda_max, "chebyshev: empty eigenvalue interval");
  ChebyshevCoefficients cc;
  cc.alpha = 0.5 * (lambda_max + lambda_min);
  cc.c = 0.5 * (lambda_max - lambda_min);
  cc.gamma.push_back(-cc.alpha);
  if (order >= 2) cc.beta.push_back(-cc.c * cc.c / (2.0 * cc.alpha));
  for (int j = 1; j < order; ++j) {
    cc.gamma.push_back(-(cc.alpha + cc.beta[j - 1]));
    if (j <= order - 2) cc.beta.push_back((cc.c / 2.0) * (cc.c / 2.0) / cc.gamma[j]);
  }
  return cc;
}

/// Error polynomial E_k of the Chebyshev smoother applied to a preconditioned
/// operator symbol `da` (= D^{-1} A).
inline CMatrix chebyshev_error(const CMatrix& da, int order, const ChebyshevCoefficients& cc) {
  const auto n = da.rows();
  CMatrix previous = CMatrix::Identity(n, n);
  if (order == 0) return previous;
  CMatrix current = previous - da / cc.alpha;
  for (int k = 2; k <= order; ++k) {
    CMatrix next = (da * current - cc.alpha * current - cc.beta[k - 2] * previous) / cc.gamma[k - 1];
    previous = std::move(current);
    current = std::move(next);
  }
  return current;
}

inline CMatrix jacobi_error(const CMatrix& da, double omega) {
  return CMatrix::Identity(da.rows(), da.cols()) - omega * da;
}

/// Frequencies at which lambda_max of the Jacobi preconditioned symbol is
/// sampled: the tensor grid of {-pi/2, 0, pi/2, pi}.
inline std::vector<Vector> lambda_max_samples(int dimension) {
  constexpr double pi = std::numbers::pi;
  return theta_tensor({-pi / 2.0, 0.0, pi / 2.0, pi}, dimension);
}

/// Fine-grid operator symbol paired with its inverse diagonal symbol.
class JacobiPreconditioned {
 public:
  JacobiPreconditioned() = default;
  explicit JacobiPreconditioned(const ElementOperator& ae)
      : symbol_(operator_symbol(ae)), inverse_diagonal_(diagonal_symbol(ae).diagonal().cwiseInverse()) {}

  const OperatorSymbol& symbol() const { return symbol_; }
  const CVector& inverse_diagonal() const { return inverse_diagonal_; }

  /// D~^{-1} A~(theta)
  CMatrix preconditioned(const Vector& theta) const { return inverse_diagonal_.asDiagonal() * symbol_(theta); }
  CMatrix preconditioned(const CMatrix& symbol_value) const { return inverse_diagonal_.asDiagonal() * symbol_value; }

 private:
  OperatorSymbol symbol_;
  CVector inverse_diagonal_;
};

inline double estimate_lambda_max(const JacobiPreconditioned& op, const std::vector<Vector>& samples) {
  double best = 0.0;
  for (const auto& theta : samples) best = std::max(best, spectral_radius(op.preconditioned(theta)));
  return best;
}

inline double estimate_lambda_max(const JacobiPreconditioned& op) {
  return estimate_lambda_max(op, lambda_max_samples(op.symbol().dimension()));
}

inline double estimate_lambda_max(const ElementOperator& ae) { return estimate_lambda_max(JacobiPreconditioned(ae)); }

/// (I - omega (Q^T diag(A_e) Q)^{-1} A~(theta))^passes
inline CMatrix jacobi_error_symbol(const ElementOperator& ae, const Localization& loc, double omega, int passes,
                                   const Vector& theta) {
  require(loc.nodes() == ae.size(), "jacobi_error_symbol: localization does not match the element operator");
  require(passes >= 0, "jacobi_error_symbol: passes must be non-negative");
  const JacobiPreconditioned op(ae);
  return matrix_power(jacobi_error(op.preconditioned(theta), omega), passes);
}

inline CMatrix chebyshev_error_symbol(const ElementOperator& ae, const Localization& loc, int order, int passes,
                                      double lambda_min, double lambda_max, const Vector& theta) {
  require(loc.nodes() == ae.size(), "chebyshev_error_symbol: localization does not match the element operator");
  require(passes >= 0, "chebyshev_error_symbol: passes must be non-negative");
  require(order >= 0, "chebyshev_error_symbol: order must be non-negative");
  const JacobiPreconditioned op(ae);
  const CMatrix da = op.preconditioned(theta);
  if (order == 0) return CMatrix::Identity(da.rows(), da.cols());
  const auto cc = chebyshev_coefficients(order, lambda_min, lambda_max);
  return matrix_power(chebyshev_error(da, order, cc), passes);
}

/// Smoother error symbol with everything frequency independent precomputed
/// (preconditioner, lambda_max estimate, recurrence coefficients).
class SmootherSymbol {
 public:
  SmootherSymbol() = default;
  SmootherSymbol(const ElementOperator& ae, const SmootherSpec& spec) : op_(ae), spec_(spec) {
    spec_.validate();
    if (const auto* c = std::get_if<ChebyshevSmoother>(&spec_.kind)) {
      lambda_max_estimate_ = estimate_lambda_max(op_);
      coefficients_ = chebyshev_coefficients(c->order, c->lower_factor * lambda_max_estimate_,
                                             c->upper_factor * lambda_max_estimate_);
    }
  }

  const JacobiPreconditioned& preconditioner() const { return op_; }
  const SmootherSpec& spec() const { return spec_; }
  double lambda_max_estimate() const { return lambda_max_estimate_; }
  const ChebyshevCoefficients& coefficients() const { return coefficients_; }

  /// One pass of the smoother given the preconditioned symbol D^{-1}A.
  CMatrix single_pass(const CMatrix& da) const {
    if (const auto* j = std::get_if<JacobiSmoother>(&spec_.kind)) return jacobi_error(da, j->omega);
    return chebyshev_error(da, std::get<ChebyshevSmoother>(spec_.kind).order, coefficients_);
  }

  CMatrix error(const CMatrix& da) const { return matrix_power(single_pass(da), spec_.passes); }
  CMatrix error(const Vector& theta) const { return error(op_.preconditioned(theta)); }

 private:
  JacobiPreconditioned op_;
  SmootherSpec spec_;
  double lambda_max_estimate_ = 0.0;
  ChebyshevCoefficients coefficients_;
};

struct SpectrumSample {
  Vector theta;
  CVector eigenvalues;  // sorted by real part, then imaginary part
};

inline CVector sorted(CVector values) {
  std::sort(values.begin(), values.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return values;
}

/// Eigenvalues of the preconditioned operator symbol I - S~ at each frequency.
inline std::vector<SpectrumSample> smoother_spectrum_sweep(const ElementOperator& ae, const SmootherSpec& spec,
                                                           const std::vector<Vector>& thetas, int threads = 1) {
  const SmootherSymbol smoother(ae, spec);
  return parallel_map<SpectrumSample>(thetas.size(), threads, [&](std::size_t i) {
    const CMatrix s = smoother.error(thetas[i]);
    const CMatrix m = CMatrix::Identity(s.rows(), s.cols()) - s;
    return SpectrumSample{thetas[i], sorted(eigenvalues(m))};
  });
}

}  // namespace lfa
