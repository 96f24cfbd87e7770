#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace lfa {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using IndexMatrix = Eigen::MatrixXi;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: bad sizes, out-of-range parameters, malformed configuration.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A numerical breakdown: singular diagonal, no admissible frequency, etc.
class NumericalError : public Error {
 public:
  using Error::Error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Kronecker product of `factors`, first factor slowest.
inline Matrix kron_all(const std::vector<Matrix>& factors) {
  Matrix out = Matrix::Ones(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

/// Eigenvalues of a general complex matrix (Schur based).
inline CVector eigenvalues(const CMatrix& m) {
  if (m.rows() == 0) return CVector();
  if (m.rows() == 1) return m.diagonal();
  Eigen::ComplexEigenSolver<CMatrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericalError("complex eigensolver did not converge");
  return solver.eigenvalues();
}

inline double spectral_radius(const CMatrix& m) {
  if (m.rows() == 0) return 0.0;
  return eigenvalues(m).cwiseAbs().maxCoeff();
}

/// Eigenvalues of a Hermitian matrix in ascending order.
inline Vector hermitian_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("hermitian eigensolver did not converge");
  return solver.eigenvalues();
}

inline double max_abs(const CMatrix& m) { return m.rows() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Matrix& m) { return m.rows() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline CMatrix matrix_power(const CMatrix& m, int exponent) {
  CMatrix result = CMatrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < exponent; ++i) result = result * m;
  return result;
}

/// Evaluates `fn(i)` for i in [0, count) on up to `threads` workers. Results
/// land in index order, so any later reduction is schedule independent.
template <typename T>
std::vector<T> parallel_map(std::size_t count, int threads, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace lfa
