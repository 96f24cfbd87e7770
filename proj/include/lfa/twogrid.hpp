#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lfa/grid.hpp"
#include "lfa/smoother.hpp"
#include "lfa/transfer.hpp"

namespace lfa {

enum class TransferMode { p, h };

/// Builds the weak form for a given element size; the two grids of an
/// h-multigrid pair rediscretize at different sizes.
using WeakFormFactory = std::function<WeakForm(double h)>;

inline WeakFormFactory laplacian_form(int dimension) {
  return [dimension](double h) { return laplacian_weakform(dimension, h); };
}

inline WeakFormFactory elasticity_form(const ElasticityModel& model, int dimension = 3) {
  return [model, dimension](double h) { return elasticity_weakform(model, dimension, h); };
}

inline WeakFormFactory scaled_form(WeakFormFactory inner, double factor) {
  return [inner = std::move(inner), factor](double h) { return scaled(inner(h), factor); };
}

/// Default sweep resolution per axis.
inline int default_resolution(int dimension) { return dimension == 1 ? 256 : dimension == 2 ? 64 : 16; }

struct TwoGridSpec {
  WeakFormFactory weak_form = laplacian_form(1);
  int fine_degree = 2;
  TransferMode mode = TransferMode::p;
  int coarse_degree = 1;   // p-mode
  int macro_elements = 2;  // h-mode: sub-elements per axis of the fine macro-element
  SmootherSpec smoother;
  int resolution = 0;  // 0 selects default_resolution(dimension)
  GridPlacement placement = GridPlacement::cell;
  double singular_cutoff = 1e-10;
  int threads = 1;

  int dimension() const { return weak_form(1.0).dimension; }
  int components() const { return weak_form(1.0).components; }
  int effective_resolution() const { return resolution > 0 ? resolution : default_resolution(dimension()); }
};

/// The fine and coarse element operators, transfer pair and smoother of a
/// two-grid configuration, with all frequency-independent work done.
class TwoGrid {
 public:
  /// Frequency-dependent factors that do not involve the smoother.
  struct Frequency {
    Vector theta;
    CMatrix preconditioned;      // D~^{-1} A~_f
    CMatrix coarse_correction;   // I - P~ A~_c^{-1} R~ A~_f
    // When the coarse correction is self-adjoint in the A~_f inner product
    // (a Galerkin coarse operator), both factors above are stored in the
    // basis L^H . L^{-H} with A~_f = L L^H, where they are Hermitian.
    bool whitened = false;
    CMatrix factor;  // L
  };

  explicit TwoGrid(const TwoGridSpec& spec) : spec_(spec) {
    spec_.smoother.validate();
    require(spec_.singular_cutoff > 0.0, "two-grid: singular cutoff must be positive");
    require(spec_.effective_resolution() >= 1, "two-grid: resolution must be positive");
    const int d = spec_.dimension();
    const int n = spec_.components();
    if (spec_.mode == TransferMode::p) {
      require(spec_.fine_degree >= 1, "two-grid: fine degree must be positive");
      require(spec_.coarse_degree >= 1 && spec_.coarse_degree <= spec_.fine_degree,
              "two-grid: coarse degree must lie in [1, fine degree]");
      fine_ = element_operator(spec_.weak_form(1.0), make_basis(spec_.fine_degree, d));
      coarse_ = element_operator(spec_.weak_form(1.0), make_basis(spec_.coarse_degree, d));
      transfer_ = p_transfer(spec_.coarse_degree, spec_.fine_degree, d, n);
    } else {
      require(spec_.macro_elements >= 2, "two-grid: h-mode needs at least two sub-elements");
      const int m = spec_.macro_elements;
      const auto basis = make_basis(spec_.fine_degree, d);
      fine_ = h_macro_element(element_operator(spec_.weak_form(1.0 / m), basis), m);
      coarse_ = element_operator(spec_.weak_form(1.0), basis);
      transfer_ = h_transfer(spec_.fine_degree, m, d, n);
    }
    smoother_ = SmootherSymbol(fine_, spec_.smoother);
    coarse_symbol_ = operator_symbol(coarse_);
    coarse_scale_ = coarse_.matrix.cwiseAbs().maxCoeff();
  }

  const TwoGridSpec& spec() const { return spec_; }
  const ElementOperator& fine_operator() const { return fine_; }
  const ElementOperator& coarse_operator() const { return coarse_; }
  const TransferPair& transfer() const { return transfer_; }
  const SmootherSymbol& smoother() const { return smoother_; }
  const OperatorSymbol& fine_symbol() const { return smoother_.preconditioner().symbol(); }
  const OperatorSymbol& coarse_symbol() const { return coarse_symbol_; }
  int size() const { return fine_symbol().rows(); }

  /// Nothing when the coarse symbol is numerically singular at `theta`.
  std::optional<Frequency> frequency(const Vector& theta) const {
    const CMatrix af = fine_symbol()(theta);
    const CMatrix ac = coarse_symbol_(theta);
    if (ac.rows() > 0) {
      Eigen::JacobiSVD<CMatrix> svd(ac);
      const auto& sv = svd.singularValues();
      if (!(sv(sv.size() - 1) > spec_.singular_cutoff * std::max(sv(0), coarse_scale_))) return std::nullopt;
    }
    const CMatrix p = transfer_.prolongation_symbol(theta);
    const CMatrix r = transfer_.restriction_symbol(theta);
    Frequency f;
    f.theta = theta;
    f.preconditioned = smoother_.preconditioner().preconditioned(af);
    f.coarse_correction = CMatrix::Identity(af.rows(), af.cols()) - p * ac.partialPivLu().solve(r * af);
    whiten(f, af);
    return f;
  }

  /// S~ (I - P~ A~_c^{-1} R~ A~_f) S~
  CMatrix error(const Frequency& f, const SmootherSymbol& smoother) const {
    const CMatrix s = smoother.error(f.preconditioned);
    const CMatrix e = s * f.coarse_correction * s;
    if (!f.whitened) return e;
    // back from the whitened basis: L^{-H} E^ L^H
    const auto upper = f.factor.adjoint().triangularView<Eigen::Upper>();
    return upper.solve(CMatrix(e * f.factor.adjoint()));
  }
  CMatrix error(const Frequency& f) const { return error(f, smoother_); }

  /// rho(S CG S); a Hermitian eigenproblem in the whitened basis, otherwise
  /// computed as rho(CG S^2), which has the same spectrum.
  double radius(const Frequency& f, const SmootherSymbol& smoother) const {
    const CMatrix s = smoother.error(f.preconditioned);
    if (f.whitened) {
      CMatrix e = s * f.coarse_correction * s;
      e = 0.5 * (e + e.adjoint()).eval();
      return hermitian_eigenvalues(e).cwiseAbs().maxCoeff();
    }
    return spectral_radius(f.coarse_correction * (s * s));
  }
  double radius(const Frequency& f) const { return radius(f, smoother_); }

  std::optional<CMatrix> symbol(const Vector& theta) const {
    auto f = frequency(theta);
    if (!f) return std::nullopt;
    return error(*f);
  }

  /// Same operators with a different smoother.
  TwoGrid with_smoother(const SmootherSpec& smoother) const {
    TwoGrid copy = *this;
    copy.spec_.smoother = smoother;
    copy.smoother_ = SmootherSymbol(copy.fine_, smoother);
    return copy;
  }

  std::vector<Vector> grid() const {
    return theta_grid(spec_.effective_resolution(), spec_.dimension(), spec_.placement);
  }

 private:
  static void whiten(Frequency& f, const CMatrix& af) {
    constexpr double kTolerance = 1e-9;
    Eigen::LLT<CMatrix> llt(af);
    if (llt.info() != Eigen::Success) return;
    const CMatrix l = llt.matrixL();
    const auto lower = l.triangularView<Eigen::Lower>();
    // X -> L^H X L^{-H}, the right factor applied through a triangular solve
    const auto transform = [&](const CMatrix& x) -> CMatrix {
      const CMatrix left = l.adjoint() * x;
      return lower.solve(CMatrix(left.adjoint())).adjoint();
    };
    CMatrix cg = transform(f.coarse_correction);
    if (max_abs(CMatrix(cg - cg.adjoint())) > kTolerance * std::max(1.0, max_abs(cg))) return;
    CMatrix da = transform(f.preconditioned);
    if (max_abs(CMatrix(da - da.adjoint())) > kTolerance * std::max(1.0, max_abs(da))) return;
    f.coarse_correction = 0.5 * (cg + cg.adjoint());
    f.preconditioned = 0.5 * (da + da.adjoint());
    f.factor = l;
    f.whitened = true;
  }

  TwoGridSpec spec_;
  ElementOperator fine_;
  ElementOperator coarse_;
  TransferPair transfer_;
  SmootherSymbol smoother_;
  OperatorSymbol coarse_symbol_;
  double coarse_scale_ = 0.0;  // guards the relative cutoff when the whole symbol vanishes
};

/// Two-grid error symbol at one frequency; empty when the coarse symbol is
/// singular there and the frequency has to be excluded.
inline std::optional<CMatrix> two_grid_symbol(const TwoGridSpec& spec, const Vector& theta) {
  return TwoGrid(spec).symbol(theta);
}

struct SweepResult {
  std::vector<Vector> thetas;  // admissible frequencies, grid order
  std::vector<double> radii;   // rho of the two-grid symbol at each
  double factor = 0.0;         // max of radii
  Vector argmax;
  int excluded = 0;
};

namespace detail {

inline SweepResult reduce(const std::vector<Vector>& grid, const std::vector<std::optional<double>>& radii) {
  SweepResult out;
  double best = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!radii[i]) {
      ++out.excluded;
      continue;
    }
    out.thetas.push_back(grid[i]);
    out.radii.push_back(*radii[i]);
    if (*radii[i] > best) {
      best = *radii[i];
      out.argmax = grid[i];
    }
  }
  if (out.thetas.empty()) throw NumericalError("two-grid sweep: every frequency was excluded");
  out.factor = best;
  return out;
}

}  // namespace detail

inline SweepResult convergence_factor(const TwoGrid& tg, const std::vector<Vector>& grid) {
  const auto radii = parallel_map<std::optional<double>>(grid.size(), tg.spec().threads,
                                                         [&](std::size_t i) -> std::optional<double> {
                                                           auto f = tg.frequency(grid[i]);
                                                           if (!f) return std::nullopt;
                                                           return tg.radius(*f);
                                                         });
  return detail::reduce(grid, radii);
}

/// One sweep per smoother, sharing the smoother independent work at every
/// frequency. Results are in the order of `smoothers`.
inline std::vector<SweepResult> convergence_factors(const TwoGrid& tg, const std::vector<SmootherSpec>& smoothers,
                                                    const std::vector<Vector>& grid) {
  std::vector<SmootherSymbol> symbols;
  for (const auto& spec : smoothers) symbols.emplace_back(tg.fine_operator(), spec);
  const auto radii = parallel_map<std::optional<std::vector<double>>>(
      grid.size(), tg.spec().threads, [&](std::size_t i) -> std::optional<std::vector<double>> {
        auto f = tg.frequency(grid[i]);
        if (!f) return std::nullopt;
        std::vector<double> out;
        for (const auto& s : symbols) out.push_back(tg.radius(*f, s));
        return out;
      });
  std::vector<SweepResult> results;
  for (std::size_t k = 0; k < smoothers.size(); ++k) {
    std::vector<std::optional<double>> column(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (radii[i]) column[i] = (*radii[i])[k];
    results.push_back(detail::reduce(grid, column));
  }
  return results;
}

inline SweepResult convergence_factor(const TwoGrid& tg) { return convergence_factor(tg, tg.grid()); }
inline SweepResult convergence_factor(const TwoGridSpec& spec) { return convergence_factor(TwoGrid(spec)); }

struct OmegaGrid {
  double start = 0.3;
  double stop = 1.3;
  double step = 0.01;

  std::vector<double> values() const {
    require(step > 0.0, "omega grid: step must be positive");
    require(stop >= start, "omega grid: empty range");
    const auto count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = start + i * step;
    return out;
  }
};

struct OmegaPoint {
  double omega = 0.0;
  double factor = 0.0;
};

// Admissible frequencies with their smoother independent factors; the cache
// is reused across every smoother evaluated on the same two-grid pair.
class FrequencyCache {
 public:
  FrequencyCache(const TwoGrid& tg, const std::vector<Vector>& grid) {
    auto all = parallel_map<std::optional<TwoGrid::Frequency>>(
        grid.size(), tg.spec().threads, [&](std::size_t i) { return tg.frequency(grid[i]); });
    for (auto& f : all) {
      if (f) {
        data_.push_back(std::move(*f));
      } else {
        ++excluded_;
      }
    }
    if (data_.empty()) throw NumericalError("two-grid sweep: every frequency was excluded");
  }

  const std::vector<TwoGrid::Frequency>& data() const { return data_; }
  int excluded() const { return excluded_; }

 private:
  std::vector<TwoGrid::Frequency> data_;
  int excluded_ = 0;
};

namespace detail {

inline SmootherSpec with_omega(SmootherSpec spec, double omega) {
  spec.kind = JacobiSmoother{omega};
  return spec;
}

}  // namespace detail

/// Full (omega, mu) curve for a Jacobi two-grid configuration; the pass
/// count comes from the smoother of `tg`.
inline std::vector<OmegaPoint> omega_sweep(const TwoGrid& tg, const FrequencyCache& cache, const OmegaGrid& omegas) {
  require(tg.spec().smoother.is_jacobi(), "omega_sweep: needs a Jacobi smoother");
  std::vector<OmegaPoint> out;
  for (double omega : omegas.values()) {
    const SmootherSymbol smoother(tg.fine_operator(), detail::with_omega(tg.spec().smoother, omega));
    const auto radii = parallel_map<double>(cache.data().size(), tg.spec().threads, [&](std::size_t i) {
      return tg.radius(cache.data()[i], smoother);
    });
    out.push_back({omega, *std::max_element(radii.begin(), radii.end())});
  }
  return out;
}

inline std::vector<OmegaPoint> omega_sweep(const TwoGridSpec& spec, const OmegaGrid& omegas) {
  const TwoGrid tg(spec);
  return omega_sweep(tg, FrequencyCache(tg, tg.grid()), omegas);
}

namespace detail {

// Maximum radius over `indices`, abandoned (returns nothing) once it exceeds
// `bound`. `hot` is updated to the position of the maximum and is evaluated
// first, since neighbouring smoothers tend to peak at the same frequency.
inline std::optional<double> bounded_max(const TwoGrid& tg, const std::vector<TwoGrid::Frequency>& data,
                                         const std::vector<std::size_t>& indices, const SmootherSymbol& smoother,
                                         double bound, std::size_t& hot) {
  double running = tg.radius(data[indices[hot]], smoother);
  std::size_t arg = hot;
  if (running > bound) return std::nullopt;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k == hot) continue;
    const double r = tg.radius(data[indices[k]], smoother);
    if (r > running) {
      running = r;
      arg = k;
      if (running > bound) return std::nullopt;
    }
  }
  hot = arg;
  return running;
}

// Pruned argmin over `order` of the omega values; ties go to the smaller omega.
inline OmegaPoint pruned_argmin(const TwoGrid& tg, const std::vector<TwoGrid::Frequency>& data,
                                const std::vector<std::size_t>& indices, const std::vector<double>& omegas,
                                const std::vector<std::size_t>& order) {
  OmegaPoint best{0.0, std::numeric_limits<double>::infinity()};
  std::size_t hot = 0;
  for (std::size_t idx : order) {
    const double omega = omegas[idx];
    const SmootherSymbol smoother(tg.fine_operator(), with_omega(tg.spec().smoother, omega));
    std::size_t local_hot = hot;
    const auto value = bounded_max(tg, data, indices, smoother, best.factor, local_hot);
    if (!value) continue;
    if (*value < best.factor || (*value == best.factor && omega < best.omega)) {
      best = {omega, *value};
      hot = local_hot;
    }
  }
  return best;
}

}  // namespace detail

/// argmin over the omega grid of the two-grid factor, ties to the smaller
/// omega. A cheap pass on a subset of frequencies picks the first candidate;
/// afterwards any omega whose partial maximum already exceeds the incumbent
/// is dropped, so the result is identical to a full scan.
inline OmegaPoint optimal_omega(const TwoGrid& tg, const FrequencyCache& cache, const OmegaGrid& omegas) {
  require(tg.spec().smoother.is_jacobi(), "optimal_omega: needs a Jacobi smoother");
  const auto values = omegas.values();
  const auto& data = cache.data();

  std::vector<std::size_t> natural(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) natural[i] = i;

  constexpr std::size_t kProxySize = 256;
  const std::size_t stride = std::max<std::size_t>(1, data.size() / kProxySize);
  std::vector<std::size_t> proxy;
  for (std::size_t i = 0; i < data.size(); i += stride) proxy.push_back(i);
  const OmegaPoint guess = detail::pruned_argmin(tg, data, proxy, values, natural);

  std::vector<std::size_t> all(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) all[i] = i;
  std::vector<std::size_t> order;
  std::size_t first = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] == guess.omega) first = i;
  order.push_back(first);
  for (std::size_t i = 0; i < values.size(); ++i)
    if (i != first) order.push_back(i);
  return detail::pruned_argmin(tg, data, all, values, order);
}

inline OmegaPoint optimal_omega(const TwoGridSpec& spec, const OmegaGrid& omegas) {
  const TwoGrid tg(spec);
  return optimal_omega(tg, FrequencyCache(tg, tg.grid()), omegas);
}

}  // namespace lfa
