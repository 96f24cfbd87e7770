#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "lfa/config.hpp"
#include "lfa/oracle.hpp"
#include "lfa/report.hpp"
#include "lfa/tables.hpp"

namespace lfa {

/// Exit codes of the command line tool.
enum ExitCode { exit_ok = 0, exit_config = 2, exit_numerical = 3 };

namespace detail {

inline std::vector<std::string> theta_header(int dimension) {
  std::vector<std::string> out;
  for (int k = 1; k <= dimension; ++k) out.push_back("theta" + std::to_string(k));
  return out;
}

inline std::vector<std::string> theta_cells(const Vector& theta) {
  std::vector<std::string> out;
  for (Eigen::Index k = 0; k < theta.size(); ++k) out.push_back(format_number(theta(k)));
  return out;
}

inline std::vector<Vector> config_grid(const AnalysisConfig& c) {
  const int res = c.resolution > 0 ? c.resolution : default_resolution(c.dimension);
  return theta_grid(res, c.dimension, parse_placement(c.placement));
}

inline Json config_json(const AnalysisConfig& c) {
  Json j = Json::object();
  j["pde"] = c.pde;
  if (c.pde == "elasticity") {
    j["young"] = c.young;
    j["poisson"] = c.poisson;
  }
  j["dimension"] = c.dimension;
  j["mode"] = c.mode;
  j["fine_degree"] = c.fine_degree;
  if (c.mode == "p") {
    j["coarse_degree"] = c.coarse_degree;
  } else {
    j["macro_elements"] = c.macro_elements;
  }
  j["smoother"] = c.smoother;
  if (c.smoother == "jacobi") {
    j["omega"] = c.omega;
  } else {
    j["order"] = c.order;
    j["lower_factor"] = c.lower_factor;
    j["upper_factor"] = c.upper_factor;
  }
  j["passes"] = c.passes;
  j["resolution"] = c.resolution > 0 ? c.resolution : default_resolution(c.dimension);
  j["placement"] = c.placement;
  return j;
}

/// Fine-grid operator of the configuration: one element (p-mode) or one
/// macro-element (h-mode).
inline ElementOperator fine_operator(const AnalysisConfig& c) {
  validate(c);
  const auto wf = weak_form(c);
  const auto basis = make_basis(c.fine_degree, c.dimension);
  if (c.mode == "h")
    return h_macro_element(element_operator(wf(1.0 / c.macro_elements), basis), c.macro_elements);
  return element_operator(wf(1.0), basis);
}

}  // namespace detail

/// Eigenvalues of the operator symbol over the frequency grid.
inline Report cmd_symbol(const AnalysisConfig& c) {
  const auto ae = detail::fine_operator(c);
  const auto symbol = operator_symbol(ae);
  auto header = detail::theta_header(c.dimension);
  header.insert(header.end(), {"index", "value"});
  Report r{CsvTable(header)};
  for (const auto& theta : detail::config_grid(c)) {
    const Vector values = hermitian_eigenvalues(symbol(theta));
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      auto cells = detail::theta_cells(theta);
      cells.push_back(format_number(static_cast<int>(i)));
      cells.push_back(format_number(values(i)));
      r.table.add_row(std::move(cells));
    }
  }
  r.summary["command"] = "symbol";
  r.summary["config"] = detail::config_json(c);
  r.summary["modes"] = symbol.rows();
  return r;
}

/// Eigenvalues of I - S over the frequency grid.
inline Report cmd_smoother_spectrum(const AnalysisConfig& c) {
  const auto ae = detail::fine_operator(c);
  const auto spec = smoother_spec(c);
  const auto samples = smoother_spectrum_sweep(ae, spec, detail::config_grid(c), c.threads);
  auto header = detail::theta_header(c.dimension);
  header.insert(header.end(), {"index", "real", "imag"});
  Report r{CsvTable(header)};
  for (const auto& s : samples) {
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
      auto cells = detail::theta_cells(s.theta);
      cells.push_back(format_number(static_cast<int>(i)));
      cells.push_back(format_number(s.eigenvalues(i).real()));
      cells.push_back(format_number(s.eigenvalues(i).imag()));
      r.table.add_row(std::move(cells));
    }
  }
  r.summary["command"] = "smoother-spectrum";
  r.summary["config"] = detail::config_json(c);
  const SmootherSymbol symbol(ae, spec);
  if (spec.is_chebyshev()) r.summary["lambda_max_estimate"] = symbol.lambda_max_estimate();
  return r;
}

/// Spectral radius of the two-grid symbol at every admissible frequency.
inline Report cmd_two_grid(const AnalysisConfig& c) {
  const TwoGrid tg(two_grid_spec(c));
  const auto sweep = convergence_factor(tg);
  auto header = detail::theta_header(c.dimension);
  header.push_back("rho");
  Report r{CsvTable(header)};
  for (std::size_t i = 0; i < sweep.thetas.size(); ++i) {
    auto cells = detail::theta_cells(sweep.thetas[i]);
    cells.push_back(format_number(sweep.radii[i]));
    r.table.add_row(std::move(cells));
  }
  r.summary["command"] = "two-grid";
  r.summary["config"] = detail::config_json(c);
  r.summary["factor"] = sweep.factor;
  r.summary["argmax"] = to_json(sweep.argmax);
  r.summary["excluded"] = sweep.excluded;
  if (tg.spec().smoother.is_chebyshev()) r.summary["lambda_max_estimate"] = tg.smoother().lambda_max_estimate();
  return r;
}

/// Convergence factor as a function of omega (Jacobi) or order (Chebyshev).
inline Report cmd_sweep(const AnalysisConfig& c) {
  auto spec = two_grid_spec(c);
  Report r;
  r.summary["command"] = "sweep";
  r.summary["config"] = detail::config_json(c);
  if (c.sweep == "omega") {
    spec.smoother = jacobi(c.omega, c.passes);
    const auto curve = omega_sweep(spec, omega_grid(c));
    r.table = CsvTable({"omega", "factor"});
    OmegaPoint best{0.0, std::numeric_limits<double>::infinity()};
    for (const auto& p : curve) {
      r.table.add_row({format_number(p.omega), format_number(p.factor)});
      if (p.factor < best.factor) best = p;
    }
    r.summary["optimal_omega"] = best.omega;
    r.summary["minimal_factor"] = best.factor;
  } else {
    const TwoGrid tg(spec);
    std::vector<SmootherSpec> smoothers;
    for (int k : c.orders) smoothers.push_back(chebyshev(k, c.lower_factor, c.upper_factor, c.passes));
    const auto sweeps = convergence_factors(tg, smoothers, tg.grid());
    r.table = CsvTable({"order", "factor"});
    for (std::size_t i = 0; i < sweeps.size(); ++i)
      r.table.add_row({format_number(c.orders[i]), format_number(sweeps[i].factor)});
  }
  return r;
}

/// One of the reproducible tables. Warnings about skipped or slow rows go to `log`.
inline Report cmd_table(const AnalysisConfig& c, std::ostream& log) {
  validate(c);
  const auto layout = table_layout(c.table);
  const auto options = table_options(c);
  const int max_degree = options.max_degree > 0 ? options.max_degree : layout.max_degree;
  if (layout.dimension == 3) {
    if (options.resolution > 0)
      log << "warning: " << layout.id << " is three-dimensional; resolution " << options.resolution
          << " overrides the default " << layout.resolution << " and runtime grows with its cube\n";
    if (max_degree >= 8)
      log << "warning: " << layout.id << " rows with fine degree 8 take a long time to compute\n";
  }
  const auto result = compute_table(layout, options);
  for (const auto& row : result.skipped)
    log << "warning: " << layout.id << " row " << row.fine << "->" << row.coarse
        << " skipped (fine degree above max_degree = " << max_degree << ")\n";

  const bool blocks = layout.lower_factors.size() > 1;
  std::vector<std::string> header;
  if (blocks) header.push_back("lower_factor");
  header.insert(header.end(), {"fine_degree", "coarse_degree"});
  for (int col : layout.columns) {
    if (layout.kind == TableKind::jacobi_optimal) {
      header.push_back("rho_nu" + std::to_string(col));
      header.push_back("omega_nu" + std::to_string(col));
    } else if (layout.kind == TableKind::jacobi_fixed) {
      header.push_back("rho");
    } else {
      header.push_back("k" + std::to_string(col));
    }
  }
  Report r{CsvTable(header)};
  for (double lower : layout.lower_factors) {
    for (const auto& row : layout.rows) {
      if (row.fine > max_degree) continue;
      std::vector<std::string> cells;
      if (blocks) cells.push_back(format_number(lower));
      cells.push_back(format_number(row.fine));
      cells.push_back(format_number(row.coarse));
      for (int col : layout.columns) {
        const auto* e = find_entry(result, lower, row.fine, row.coarse, col);
        cells.push_back(format_number(e->factor));
        if (layout.kind == TableKind::jacobi_optimal) cells.push_back(format_number(e->omega));
      }
      r.table.add_row(std::move(cells));
    }
  }
  r.summary["command"] = "table";
  r.summary["table"] = layout.id;
  r.summary["title"] = layout.title;
  r.summary["resolution"] = result.resolution;
  r.summary["placement"] = to_string(layout.placement);
  if (layout.pde == "elasticity") r.summary["poisson"] = options.poisson;
  Json skipped = Json::array();
  for (const auto& row : result.skipped) skipped.push_back(std::to_string(row.fine) + "->" + std::to_string(row.coarse));
  r.summary["skipped"] = skipped;
  return r;
}

/// Tolerance for agreement between measured and predicted factors.
inline double oracle_tolerance(double predicted) { return 0.02 + 0.05 * predicted; }

/// Runs the periodic two-grid iteration and compares with the LFA factor.
inline Report cmd_validate(const AnalysisConfig& c) {
  const TwoGrid tg(two_grid_spec(c));
  const double predicted = convergence_factor(tg).factor;
  const auto measured = measured_two_grid_factor(tg, oracle_settings(c));
  const double tolerance = oracle_tolerance(predicted);
  const bool agree = std::abs(measured.measured - predicted) <= tolerance;

  Report r{CsvTable({"lfa_factor", "measured_factor", "N", "iterations", "agree"})};
  r.table.add_row({format_number(predicted), format_number(measured.measured), format_number(measured.elements),
                   format_number(measured.iterations), agree ? "true" : "false"});
  r.summary["command"] = "validate";
  r.summary["config"] = detail::config_json(c);
  r.summary["lfa_factor"] = predicted;
  r.summary["measured_factor"] = measured.measured;
  r.summary["N"] = measured.elements;
  r.summary["iterations"] = measured.iterations;
  r.summary["trials"] = c.trials;
  r.summary["unknowns"] = measured.unknowns;
  r.summary["diverged"] = measured.diverged;
  r.summary["tolerance"] = tolerance;
  r.summary["agree"] = agree;
  return r;
}

inline std::vector<std::string> command_names() {
  return {"symbol", "smoother-spectrum", "two-grid", "sweep", "table", "validate"};
}

inline Report run_command(const std::string& name, const AnalysisConfig& c, std::ostream& log) {
  if (name == "symbol") return cmd_symbol(c);
  if (name == "smoother-spectrum") return cmd_smoother_spectrum(c);
  if (name == "two-grid") return cmd_two_grid(c);
  if (name == "sweep") return cmd_sweep(c);
  if (name == "table") return cmd_table(c, log);
  if (name == "validate") return cmd_validate(c);
  throw ConfigError("unknown command '" + name + "'");
}

}  // namespace lfa
