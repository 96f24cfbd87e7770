#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "lfa/config.hpp"
#include "lfa/twogrid.hpp"

namespace lfa {

enum class TableKind {
  jacobi_optimal,  // (rho_min, omega_opt) per number of passes
  jacobi_fixed,    // factor at one fixed omega
  chebyshev,       // factor per Chebyshev order
};

struct TableRow {
  int fine = 0;
  int coarse = 0;
};

/// Layout and sampling of one of the reproducible convergence tables.
struct TableLayout {
  std::string id;
  std::string title;
  TableKind kind = TableKind::chebyshev;
  std::string pde = "laplacian";
  int dimension = 1;
  std::vector<TableRow> rows;
  std::vector<int> columns;              // passes (Jacobi) or orders (Chebyshev)
  std::vector<double> lower_factors = {0.1};  // one block of rows per factor
  double omega = 1.0;                    // jacobi_fixed only
  int resolution = 8;
  GridPlacement placement = GridPlacement::vertex;
  int max_degree = 16;  // rows with a higher fine degree are skipped by default
};

namespace detail {

inline std::vector<TableRow> rows_up_to(int max_fine) {
  std::vector<TableRow> all = {{2, 1}, {4, 2}, {4, 1}, {8, 4}, {8, 2}, {8, 1}, {16, 8}, {16, 4}, {16, 2}, {16, 1}};
  std::vector<TableRow> out;
  for (const auto& r : all)
    if (r.fine <= max_fine) out.push_back(r);
  return out;
}

inline std::vector<TableRow> halving_and_linear(int max_fine) {
  std::vector<TableRow> out;
  for (int p = 4; p <= max_fine; p *= 2) {
    out.push_back({p, p / 2});
    out.push_back({p, 1});
  }
  return out;
}

}  // namespace detail

inline std::vector<std::string> table_ids() { return {"t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8", "t9"}; }

inline TableLayout table_layout(const std::string& id) {
  TableLayout t;
  t.id = id;
  if (id == "t1") {
    t.title = "1D Laplacian, Jacobi: minimal factor and optimal weight";
    t.kind = TableKind::jacobi_optimal;
    t.rows = detail::rows_up_to(16);
    t.columns = {1, 2, 3};
    t.resolution = 256;
    t.placement = GridPlacement::cell;
  } else if (id == "t2") {
    t.title = "1D Laplacian, Chebyshev";
    t.rows = detail::rows_up_to(16);
    t.columns = {1, 2, 3, 4};
  } else if (id == "t3") {
    t.title = "1D Laplacian, Chebyshev with raised lower eigenvalue bound";
    t.rows = detail::halving_and_linear(16);
    t.columns = {1, 2, 3, 4};
    t.lower_factors = {0.2, 0.3};
    t.resolution = 256;
    t.placement = GridPlacement::cell;
  } else if (id == "t4") {
    t.title = "2D Laplacian, Jacobi: minimal factor and optimal weight";
    t.kind = TableKind::jacobi_optimal;
    t.dimension = 2;
    t.rows = detail::rows_up_to(8);
    t.columns = {1, 2, 3};
    t.resolution = 64;
    t.placement = GridPlacement::cell;
  } else if (id == "t5") {
    t.title = "2D Laplacian, Chebyshev";
    t.dimension = 2;
    t.rows = detail::rows_up_to(16);
    t.columns = {1, 2, 3, 4};
  } else if (id == "t6") {
    t.title = "2D Laplacian, Chebyshev with raised lower eigenvalue bound";
    t.dimension = 2;
    t.rows = detail::halving_and_linear(8);
    t.columns = {1, 2, 3, 4};
    t.lower_factors = {0.2, 0.3};
  } else if (id == "t7") {
    t.title = "3D Laplacian, Jacobi with omega = 1";
    t.kind = TableKind::jacobi_fixed;
    t.dimension = 3;
    t.rows = detail::rows_up_to(8);
    t.columns = {1};
    t.resolution = 16;
    t.max_degree = 4;
  } else if (id == "t8") {
    t.title = "3D Laplacian, Chebyshev";
    t.dimension = 3;
    t.rows = detail::rows_up_to(8);
    t.columns = {2, 3, 4};
    t.resolution = 16;
    t.max_degree = 4;
  } else if (id == "t9") {
    t.title = "3D linear elasticity, Chebyshev";
    t.pde = "elasticity";
    t.dimension = 3;
    t.rows = detail::rows_up_to(8);
    t.columns = {1, 2, 3, 4};
    t.max_degree = 4;
  } else {
    std::string list;
    for (const auto& known : table_ids()) list += (list.empty() ? "" : ", ") + known;
    throw ConfigError("config key 'table': unknown table '" + id + "' (expected one of " + list + ")");
  }
  return t;
}

/// One computed cell of a table.
struct TableEntry {
  double lower_factor = 0.0;
  TableRow row;
  int column = 0;  // passes or order
  double factor = 0.0;
  double omega = std::numeric_limits<double>::quiet_NaN();  // Jacobi tables only
};

struct TableOptions {
  int resolution = 0;  // 0: the table's own
  int max_degree = 0;  // 0: the table's own
  double young = 1.0;
  double poisson = 0.4;
  OmegaGrid omegas;
  int threads = 1;
};

struct TableResult {
  TableLayout layout;
  int resolution = 0;
  std::vector<TableEntry> entries;
  std::vector<TableRow> skipped;
};

inline TableOptions table_options(const AnalysisConfig& c) {
  TableOptions o;
  o.resolution = c.resolution;
  o.max_degree = c.max_degree;
  o.young = c.young;
  o.poisson = c.poisson;
  o.omegas = omega_grid(c);
  o.threads = c.threads;
  return o;
}

inline TwoGridSpec table_row_spec(const TableLayout& t, const TableRow& row, const TableOptions& o) {
  TwoGridSpec s;
  s.weak_form = t.pde == "elasticity" ? elasticity_form(ElasticityModel(o.young, o.poisson), t.dimension)
                                      : laplacian_form(t.dimension);
  s.fine_degree = row.fine;
  s.coarse_degree = row.coarse;
  s.resolution = o.resolution > 0 ? o.resolution : t.resolution;
  s.placement = t.placement;
  s.threads = o.threads;
  return s;
}

/// Computes the rows of a table one two-grid pair at a time; `on_row` (if
/// set) is called after each row, e.g. for progress output.
template <typename Callback>
TableResult compute_table(const TableLayout& t, const TableOptions& o, Callback on_row) {
  TableResult result;
  result.layout = t;
  result.resolution = o.resolution > 0 ? o.resolution : t.resolution;
  const int max_degree = o.max_degree > 0 ? o.max_degree : t.max_degree;
  for (double lower : t.lower_factors) {
    for (const auto& row : t.rows) {
      if (row.fine > max_degree) {
        if (lower == t.lower_factors.front()) result.skipped.push_back(row);
        continue;
      }
      const TwoGrid tg(table_row_spec(t, row, o));
      if (t.kind == TableKind::jacobi_optimal) {
        const FrequencyCache cache(tg, tg.grid());
        for (int passes : t.columns) {
          const auto best = optimal_omega(tg.with_smoother(jacobi(1.0, passes)), cache, o.omegas);
          result.entries.push_back({lower, row, passes, best.factor, best.omega});
        }
      } else {
        std::vector<SmootherSpec> smoothers;
        for (int c : t.columns)
          smoothers.push_back(t.kind == TableKind::jacobi_fixed ? jacobi(t.omega, c) : chebyshev(c, lower, 1.0));
        const auto sweeps = convergence_factors(tg, smoothers, tg.grid());
        for (std::size_t i = 0; i < sweeps.size(); ++i) {
          TableEntry e{lower, row, t.columns[i], sweeps[i].factor};
          if (t.kind == TableKind::jacobi_fixed) e.omega = t.omega;
          result.entries.push_back(e);
        }
      }
      on_row(row);
    }
  }
  return result;
}

inline TableResult compute_table(const TableLayout& t, const TableOptions& o) {
  return compute_table(t, o, [](const TableRow&) {});
}

/// The entry for (lower factor, fine, coarse, column), if it was computed.
inline const TableEntry* find_entry(const TableResult& r, double lower, int fine, int coarse, int column) {
  for (const auto& e : r.entries)
    if (std::abs(e.lower_factor - lower) < 1e-12 && e.row.fine == fine && e.row.coarse == coarse && e.column == column)
      return &e;
  return nullptr;
}

}  // namespace lfa
