// Acceptance run: one PASS/FAIL line per criterion, details indented below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "lfa/oracle.hpp"
#include "lfa/tables.hpp"

using namespace lfa;

namespace {

struct Reference {
  double lower;
  int fine;
  int coarse;
  std::vector<double> values;  // one per table column
  std::vector<double> omegas;  // Jacobi tables with optimal weights
};

const std::vector<Reference> kTable1 = {
    {0.1, 2, 1, {0.137, 0.060, 0.041}, {0.63, 0.69, 0.72}},
    {0.1, 4, 2, {0.204, 0.059, 0.045}, {0.62, 0.64, 0.70}},
    {0.1, 4, 1, {0.591, 0.350, 0.207}, {0.77, 0.77, 0.77}},
    {0.1, 8, 4, {0.250, 0.068, 0.033}, {0.60, 0.60, 0.63}},
    {0.1, 8, 2, {0.668, 0.446, 0.298}, {0.73, 0.73, 0.73}},
    {0.1, 8, 1, {0.874, 0.764, 0.668}, {0.78, 0.78, 0.78}},
    {0.1, 16, 8, {0.300, 0.090, 0.035}, {0.57, 0.57, 0.58}},
    {0.1, 16, 4, {0.719, 0.517, 0.371}, {0.69, 0.69, 0.69}},
    {0.1, 16, 2, {0.906, 0.820, 0.743}, {0.73, 0.73, 0.73}},
    {0.1, 16, 1, {0.968, 0.936, 0.906}, {0.74, 0.74, 0.74}},
};

const std::vector<Reference> kTable2 = {
    {0.1, 2, 1, {0.545, 0.220, 0.063, 0.017}, {}},  {0.1, 4, 2, {0.576, 0.222, 0.089, 0.025}, {}},
    {0.1, 4, 1, {0.623, 0.269, 0.089, 0.070}, {}},  {0.1, 8, 4, {0.638, 0.244, 0.074, 0.022}, {}},
    {0.1, 8, 2, {0.657, 0.260, 0.097, 0.059}, {}},  {0.1, 8, 1, {0.881, 0.674, 0.510, 0.393}, {}},
    {0.1, 16, 8, {0.664, 0.253, 0.075, 0.022}, {}}, {0.1, 16, 4, {0.714, 0.328, 0.135, 0.059}, {}},
    {0.1, 16, 2, {0.907, 0.741, 0.602, 0.496}, {}}, {0.1, 16, 1, {0.970, 0.912, 0.857, 0.809}, {}},
};

const std::vector<Reference> kTable3 = {
    {0.2, 4, 2, {0.410, 0.093, 0.043, 0.024}, {}},  {0.2, 4, 1, {0.611, 0.250, 0.106, 0.071}, {}},
    {0.2, 8, 4, {0.435, 0.081, 0.016, 0.007}, {}},  {0.2, 8, 1, {0.891, 0.739, 0.623, 0.529}, {}},
    {0.2, 16, 8, {0.443, 0.081, 0.015, 0.006}, {}}, {0.2, 16, 1, {0.973, 0.931, 0.894, 0.861}, {}},
    {0.3, 4, 2, {0.279, 0.070, 0.042, 0.031}, {}},  {0.3, 4, 1, {0.638, 0.332, 0.184, 0.104}, {}},
    {0.3, 8, 4, {0.289, 0.050, 0.023, 0.012}, {}},  {0.3, 8, 1, {0.899, 0.777, 0.682, 0.599}, {}},
    {0.3, 16, 8, {0.294, 0.055, 0.020, 0.010}, {}}, {0.3, 16, 1, {0.975, 0.942, 0.913, 0.885}, {}},
};

const std::vector<Reference> kTable4 = {
    {0.1, 2, 1, {0.230, 0.091, 0.061}, {0.95, 0.99, 1.03}}, {0.1, 4, 2, {0.388, 0.151, 0.078}, {0.82, 0.82, 0.83}},
    {0.1, 4, 1, {0.763, 0.582, 0.444}, {0.95, 0.95, 0.95}}, {0.1, 8, 4, {0.646, 0.418, 0.272}, {0.79, 0.79, 0.79}},
    {0.1, 8, 2, {0.858, 0.737, 0.633}, {0.84, 0.84, 0.84}}, {0.1, 8, 1, {0.952, 0.907, 0.864}, {0.87, 0.87, 0.87}},
};

const std::vector<Reference> kTable5 = {
    {0.1, 2, 1, {0.621, 0.252, 0.075, 0.039}, {}},  {0.1, 4, 2, {0.607, 0.281, 0.085, 0.047}, {}},
    {0.1, 4, 1, {0.768, 0.424, 0.219, 0.127}, {}},  {0.1, 8, 4, {0.669, 0.278, 0.110, 0.055}, {}},
    {0.1, 8, 2, {0.864, 0.633, 0.456, 0.336}, {}},  {0.1, 8, 1, {0.956, 0.873, 0.795, 0.730}, {}},
    {0.1, 16, 8, {0.855, 0.613, 0.435, 0.319}, {}}, {0.1, 16, 4, {0.938, 0.822, 0.719, 0.634}, {}},
    {0.1, 16, 2, {0.976, 0.928, 0.882, 0.842}, {}}, {0.1, 16, 1, {0.992, 0.975, 0.959, 0.944}, {}},
};

const std::vector<Reference> kTable6 = {
    {0.2, 4, 2, {0.450, 0.137, 0.067, 0.050}, {}}, {0.2, 4, 1, {0.786, 0.525, 0.362, 0.255}, {}},
    {0.2, 8, 4, {0.668, 0.330, 0.172, 0.106}, {}}, {0.2, 8, 1, {0.960, 0.899, 0.848, 0.801}, {}},
    {0.3, 4, 2, {0.407, 0.106, 0.073, 0.059}, {}}, {0.3, 4, 1, {0.803, 0.590, 0.447, 0.341}, {}},
    {0.3, 8, 4, {0.691, 0.409, 0.256, 0.164}, {}}, {0.3, 8, 1, {0.963, 0.915, 0.874, 0.835}, {}},
};

const std::vector<Reference> kTable7 = {
    {0.1, 2, 1, {0.312}, {}},
    {0.1, 4, 2, {1.436}, {}},
};

const std::vector<Reference> kTable8 = {
    {0.1, 2, 1, {0.253, 0.076, 0.041}, {}},
    {0.1, 4, 2, {0.277, 0.111, 0.062}, {}},
};

const std::vector<Reference> kTable9 = {
    {0.1, 2, 1, {0.815, 0.521, 0.321, 0.204}, {}},
    {0.1, 4, 2, {0.878, 0.666, 0.499, 0.382}, {}},
};

using Clock = std::chrono::steady_clock;

class Verdict {
 public:
  void detail(const std::string& line) { details_.push_back(line); }
  void check(bool ok, const std::string& line) {
    if (!ok) {
      pass_ = false;
      details_.push_back("mismatch: " + line);
    }
  }
  bool pass() const { return pass_; }
  const std::vector<std::string>& details() const { return details_; }

 private:
  bool pass_ = true;
  std::vector<std::string> details_;
};

std::string fmt(const char* format, double a) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, format, a);
  return buffer;
}

std::string row_name(const Reference& r) {
  std::string name = std::to_string(r.fine) + "->" + std::to_string(r.coarse);
  if (std::abs(r.lower - 0.1) > 1e-12) name = "lower " + fmt("%.1f", r.lower) + " " + name;
  return name;
}

std::string grid_name(const TableResult& t) {
  return to_string(t.layout.placement) + " " + std::to_string(t.resolution);
}

// Compares a computed table with reference rows; `tolerance(row)` may
// depend on the row. Returns the largest deviation.
double compare(Verdict& v, const TableResult& t, const std::vector<Reference>& refs,
               const std::function<double(const Reference&)>& tolerance, double omega_tolerance = 0.0) {
  double worst = 0.0;
  for (const auto& ref : refs) {
    for (std::size_t i = 0; i < ref.values.size(); ++i) {
      const int column = t.layout.columns[i];
      const auto* e = find_entry(t, ref.lower, ref.fine, ref.coarse, column);
      if (!e) {
        v.check(false, t.layout.id + " " + row_name(ref) + " column " + std::to_string(column) + " not computed");
        continue;
      }
      const double diff = std::abs(e->factor - ref.values[i]);
      worst = std::max(worst, diff);
      const std::string where = t.layout.id + " " + row_name(ref) + " column " + std::to_string(column);
      v.check(diff <= tolerance(ref) + 1e-9,
              where + ": computed " + fmt("%.4f", e->factor) + ", reference " + fmt("%.3f", ref.values[i]));
      if (!ref.omegas.empty()) {
        const double dw = std::abs(e->omega - ref.omegas[i]);
        v.check(dw <= omega_tolerance + 1e-9,
                where + ": omega " + fmt("%.2f", e->omega) + ", reference " + fmt("%.2f", ref.omegas[i]));
      }
    }
  }
  return worst;
}

TableResult table(const std::string& id, int max_degree = 0) {
  TableOptions o;
  o.max_degree = max_degree;
  return compute_table(table_layout(id), o);
}

Verdict criterion1() {
  Verdict v;
  const auto t = table("t1");
  const double worst = compare(v, t, kTable1, [](const Reference&) { return 0.005; }, 0.01);
  v.detail("t1 grid " + grid_name(t) + ", omega step 0.01, worst |d rho| " + fmt("%.4f", worst));
  return v;
}

Verdict criterion2() {
  Verdict v;
  const auto t = table("t2");
  const double worst = compare(v, t, kTable2, [](const Reference&) { return 0.005; });
  v.detail("t2 grid " + grid_name(t) + ", worst deviation " + fmt("%.4f", worst));
  return v;
}

Verdict criterion3() {
  Verdict v;
  const auto t = table("t3");
  const double worst = compare(v, t, kTable3, [](const Reference&) { return 0.005; });
  v.detail("t3 grid " + grid_name(t) + ", worst deviation " + fmt("%.4f", worst));
  return v;
}

Verdict criterion4() {
  Verdict v;
  const auto t4 = table("t4");
  double worst = compare(v, t4, kTable4, [](const Reference&) { return 0.01; }, 0.01);
  v.detail("t4 grid " + grid_name(t4) + ", worst deviation " + fmt("%.4f", worst));
  const auto t5 = table("t5");
  worst = compare(v, t5, kTable5, [](const Reference& r) { return r.fine == 16 ? 0.02 : 0.01; });
  v.detail("t5 grid " + grid_name(t5) + ", worst deviation " + fmt("%.4f", worst));
  const auto t6 = table("t6");
  worst = compare(v, t6, kTable6, [](const Reference&) { return 0.01; });
  v.detail("t6 grid " + grid_name(t6) + ", worst deviation " + fmt("%.4f", worst));
  return v;
}

Verdict criterion5() {
  Verdict v;
  const auto t7 = table("t7", 4);
  double worst = compare(v, t7, kTable7, [](const Reference&) { return 0.02; });
  v.detail("t7 grid " + grid_name(t7) + ", worst deviation " + fmt("%.4f", worst) + "; fine degree 8 rows skipped");
  const auto t8 = table("t8", 4);
  worst = compare(v, t8, kTable8, [](const Reference&) { return 0.02; });
  v.detail("t8 grid " + grid_name(t8) + ", worst deviation " + fmt("%.4f", worst) + "; fine degree 8 rows skipped");
  return v;
}

Verdict criterion6() {
  Verdict v;
  auto layout = table_layout("t9");
  layout.rows = {{2, 1}, {4, 2}};
  TableOptions o;
  o.resolution = 12;
  const auto t = compute_table(layout, o);
  const double worst = compare(v, t, kTable9, [](const Reference&) { return 0.02; });
  v.detail("t9 grid " + grid_name(t) + ", Poisson ratio " + fmt("%.2f", o.poisson) + ", worst deviation " +
           fmt("%.4f", worst));
  return v;
}

Verdict criterion7() {
  Verdict v;
  const auto symbol = operator_symbol(element_operator(laplacian_weakform(2), make_basis(1, 2)));
  double worst = 0.0;
  for (const auto& t : theta_grid(64, 2, GridPlacement::cell)) {
    const double c1 = std::cos(t(0)), c2 = std::cos(t(1));
    worst = std::max(worst, std::abs(symbol(t)(0, 0) - 2.0 / 3.0 * (4.0 - c1 - c2 - 2.0 * c1 * c2)));
  }
  v.check(worst <= 1e-12, "stencil deviation " + fmt("%.3g", worst));
  v.detail("64x64 cell grid, max deviation " + fmt("%.3g", worst));
  return v;
}

Verdict criterion8() {
  Verdict v;
  Matrix fine(5, 5);
  fine << 7, -8, 1, 0, 0, -8, 16, -8, 0, 0, 1, -8, 14, -8, 1, 0, 0, -8, 16, -8, 0, 0, 1, -8, 7;
  fine *= 2.0 / 3.0;
  Matrix coarse(3, 3);
  coarse << 7, -8, 1, -8, 16, -8, 1, -8, 7;
  coarse /= 3.0;
  const auto macro = h_macro_element(element_operator(laplacian_weakform(1, 0.5), make_basis(2, 1)), 2);
  const auto single = element_operator(laplacian_weakform(1, 1.0), make_basis(2, 1));
  const double df = max_abs(Matrix(macro.matrix - fine));
  const double dc = max_abs(Matrix(single.matrix - coarse));
  v.check(df <= 1e-12, "macro-element deviation " + fmt("%.3g", df));
  v.check(dc <= 1e-12, "coarse element deviation " + fmt("%.3g", dc));
  v.detail("macro-element " + fmt("%.3g", df) + ", coarse element " + fmt("%.3g", dc));
  return v;
}

Verdict criterion9() {
  Verdict v;
  double worst = 0.0;
  int cases = 0;
  for (const std::string pde : {"laplacian", "elasticity"})
    for (int d = 1; d <= 2; ++d)
      for (int p = 1; p <= 4; ++p)
        for (int n : {4, 6, 8}) {
          const auto wf = pde == "laplacian" ? laplacian_weakform(d) : elasticity_weakform(ElasticityModel(), d);
          const auto problem = assemble_periodic(wf, make_basis(p, d), n);
          const double err = circulant_eig_check(problem, operator_symbol(problem.element));
          worst = std::max(worst, err);
          ++cases;
          v.check(err <= 1e-9, pde + " d=" + std::to_string(d) + " p=" + std::to_string(p) + " N=" +
                                   std::to_string(n) + ": " + fmt("%.3g", err));
        }
  v.detail(std::to_string(cases) + " lattices, largest eigenvalue mismatch " + fmt("%.3g", worst));
  return v;
}

Verdict criterion10() {
  Verdict v;
  const OracleSettings settings;  // N = 32
  double worst = 0.0;
  int cases = 0;
  const auto run = [&](TwoGridSpec spec, const std::string& name) {
    const TwoGrid tg(spec);
    const double predicted = convergence_factor(tg).factor;
    const auto measured = measured_two_grid_factor(tg, settings);
    const double diff = std::abs(measured.measured - predicted);
    worst = std::max(worst, diff);
    ++cases;
    v.check(diff <= 0.02 + 0.05 * predicted,
            name + ": measured " + fmt("%.4f", measured.measured) + ", predicted " + fmt("%.4f", predicted));
  };
  for (const auto& r : kTable1) {
    if (r.fine > 8) continue;
    TwoGridSpec s;
    s.fine_degree = r.fine;
    s.coarse_degree = r.coarse;
    s.smoother = jacobi(r.omegas[0]);
    run(s, "t1 " + row_name(r) + " omega " + fmt("%.2f", r.omegas[0]));
  }
  for (const auto& r : kTable2) {
    if (r.fine > 4) continue;
    for (int k = 1; k <= 4; ++k) {
      TwoGridSpec s;
      s.fine_degree = r.fine;
      s.coarse_degree = r.coarse;
      s.smoother = chebyshev(k);
      run(s, "t2 " + row_name(r) + " k=" + std::to_string(k));
    }
  }
  v.detail(std::to_string(cases) + " configurations, N = 32, LFA on the cell 256 grid, largest gap " +
           fmt("%.4f", worst));
  return v;
}

Verdict criterion11() {
  Verdict v;
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> angle(-0.5 * std::numbers::pi, 1.5 * std::numbers::pi);
  const auto random_theta = [&](int d) {
    Vector t(d);
    for (int k = 0; k < d; ++k) t(k) = angle(rng);
    return t;
  };

  double hermitian = 0.0;
  for (int d = 1; d <= 3; ++d)
    for (int p = 1; p <= (d == 3 ? 2 : 4); ++p) {
      const auto lap = operator_symbol(element_operator(laplacian_weakform(d), make_basis(p, d)));
      const auto el = operator_symbol(element_operator(elasticity_weakform(ElasticityModel(), d), make_basis(p, d)));
      for (int i = 0; i < 20; ++i) {
        const auto t = random_theta(d);
        const CMatrix a = lap(t), b = el(t);
        hermitian = std::max({hermitian, max_abs(CMatrix(a - a.adjoint())), max_abs(CMatrix(b - b.adjoint()))});
      }
    }
  v.check(hermitian <= 1e-12, "Hermitian symbols " + fmt("%.3g", hermitian));

  double unity = 0.0;
  for (int d = 1; d <= 3; ++d)
    for (int p = 1; p <= 8; ++p) {
      const auto b = make_basis(p, d);
      unity = std::max(unity, (b.interp.rowwise().sum() - Vector::Ones(b.interp.rows())).cwiseAbs().maxCoeff());
    }
  v.check(unity <= 1e-12, "partition of unity " + fmt("%.3g", unity));

  double adjoint = 0.0;
  for (const auto& tp : {p_transfer(1, 2, 1, 1), p_transfer(2, 8, 2, 1), p_transfer(1, 4, 3, 3), h_transfer(2, 2, 2, 1)})
    for (int i = 0; i < 50; ++i) {
      const auto t = random_theta(tp.fine.dimension);
      adjoint = std::max(adjoint, max_abs(CMatrix(restriction_symbol(tp, t) - prolongation_symbol(tp, t).adjoint())));
    }
  v.check(adjoint <= 1e-12, "adjoint transfer pair " + fmt("%.3g", adjoint));

  double power = 0.0;
  double first_order = 0.0;
  for (int p : {2, 4}) {
    const auto ae = element_operator(laplacian_weakform(2), make_basis(p, 2));
    const SmootherSymbol once(ae, jacobi(0.8)), thrice(ae, jacobi(0.8, 3));
    const SmootherSymbol cheb(ae, chebyshev(1));
    const SmootherSymbol jac(ae, jacobi(1.0 / cheb.coefficients().alpha));
    for (int i = 0; i < 50; ++i) {
      const auto t = random_theta(2);
      const CMatrix s = once.error(t);
      power = std::max(power, max_abs(CMatrix(thrice.error(t) - s * s * s)));
      first_order = std::max(first_order, max_abs(CMatrix(cheb.error(t) - jac.error(t))));
    }
  }
  v.check(power <= 1e-12, "power law in passes " + fmt("%.3g", power));
  v.check(first_order <= 1e-12, "first order Chebyshev versus Jacobi " + fmt("%.3g", first_order));

  double scale = 0.0;
  for (double s : {1e-3, 10.0, 1e4}) {
    TwoGridSpec base;
    base.fine_degree = 4;
    base.coarse_degree = 2;
    base.smoother = chebyshev(2);
    base.resolution = 64;
    TwoGridSpec scaled_spec = base;
    scaled_spec.weak_form = scaled_form(laplacian_form(1), s);
    scale = std::max(scale, std::abs(convergence_factor(base).factor - convergence_factor(scaled_spec).factor));
  }
  v.check(scale <= 1e-10, "scale invariance " + fmt("%.3g", scale));

  double refinement = 0.0;
  const auto doubling = [&](const TwoGridSpec& spec, const std::string& name) {
    TwoGridSpec fine = spec;
    fine.resolution = 2 * spec.resolution;
    const double change = std::abs(convergence_factor(fine).factor - convergence_factor(spec).factor);
    refinement = std::max(refinement, change);
    v.check(change < 0.002, "refinement " + name + " changes by " + fmt("%.4f", change));
  };
  for (const auto& r : kTable1)
    for (int nu = 1; nu <= 3; ++nu) {
      TwoGridSpec s;
      s.fine_degree = r.fine;
      s.coarse_degree = r.coarse;
      s.smoother = jacobi(r.omegas[nu - 1], nu);
      s.resolution = 256;
      doubling(s, "t1 " + row_name(r) + " nu=" + std::to_string(nu));
    }
  std::vector<Reference> chebyshev_rows = kTable2;
  chebyshev_rows.insert(chebyshev_rows.end(), kTable3.begin(), kTable3.end());
  for (const auto& r : chebyshev_rows)
    for (int k = 1; k <= 4; ++k) {
      TwoGridSpec s;
      s.fine_degree = r.fine;
      s.coarse_degree = r.coarse;
      s.smoother = chebyshev(k, r.lower);
      s.resolution = 256;
      doubling(s, "Chebyshev " + row_name(r) + " k=" + std::to_string(k));
    }
  v.detail("Hermitian " + fmt("%.2g", hermitian) + ", unity " + fmt("%.2g", unity) + ", adjoint " +
           fmt("%.2g", adjoint) + ", power " + fmt("%.2g", power) + ", k=1 " + fmt("%.2g", first_order) +
           ", scale " + fmt("%.2g", scale) + ", refinement cell 256 to 512 " + fmt("%.4f", refinement));
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"Table 1, 1D Laplacian, Jacobi", criterion1},
      {"Table 2, 1D Laplacian, Chebyshev", criterion2},
      {"Table 3, 1D Laplacian, Chebyshev with raised lower bound", criterion3},
      {"Tables 4-6, 2D Laplacian", criterion4},
      {"Tables 7-8, 3D Laplacian", criterion5},
      {"Table 9, 3D elasticity", criterion6},
      {"Bilinear symbol equals the 9-point stencil", criterion7},
      {"Macro-element matrices", criterion8},
      {"Block-circulant eigenvalues", criterion9},
      {"Measured versus predicted factors", criterion10},
      {"Property suites", criterion11},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    const Verdict v = criteria[i].second();
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("criterion %zu %s: %s (%.1f s)\n", i + 1, v.pass() ? "PASS" : "FAIL", criteria[i].first.c_str(),
                seconds);
    for (const auto& line : v.details()) std::printf("    %s\n", line.c_str());
    std::fflush(stdout);
    if (!v.pass()) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
