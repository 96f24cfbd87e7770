#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lfa/oracle.hpp"
#include "lfa/twogrid.hpp"

namespace lfa {

/// Malformed or inconsistent configuration; the message names the key.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Every setting the command line tool understands, with its default.
struct AnalysisConfig {
  std::string pde = "laplacian";  // laplacian | elasticity
  double young = 1.0;
  double poisson = 0.4;
  int dimension = 1;
  int components = 0;  // 0: implied by the pde

  std::string mode = "p";  // p | h
  int fine_degree = 2;
  int coarse_degree = 1;
  int macro_elements = 2;

  std::string smoother = "jacobi";  // jacobi | chebyshev
  double omega = 1.0;
  int passes = 1;
  int order = 2;
  double lower_factor = 0.1;
  double upper_factor = 1.0;

  int resolution = 0;  // 0: 256 / 64 / 16 by dimension
  std::string placement = "cell";
  double singular_cutoff = 1e-10;

  double omega_start = 0.3;
  double omega_stop = 1.3;
  double omega_step = 0.01;
  std::string sweep = "omega";  // omega | order
  std::vector<int> orders = {1, 2, 3, 4};

  std::string table = "t1";
  int max_degree = 0;  // table rows above this fine degree are skipped; 0: table default

  int elements = 32;
  int iterations = 100;
  int trials = 3;
  unsigned seed = 20240101;

  std::string output;
  std::string format = "csv";
  int threads = 1;
};

namespace detail {

inline std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) throw ConfigError("config key '" + key + "': cannot parse '" + value + "'");
  return out;
}

inline std::string parse_choice(const std::string& key, const std::string& value,
                                const std::vector<std::string>& allowed) {
  for (const auto& a : allowed)
    if (a == value) return value;
  std::string list;
  for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
  throw ConfigError("config key '" + key + "': '" + value + "' is not one of " + list);
}

inline std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  std::stringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) out.push_back(parse_number<int>(key, trim(item)));
  if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
  return out;
}

}  // namespace detail

/// Applies one key=value setting.
inline void set_config_value(AnalysisConfig& c, const std::string& key, const std::string& value) {
  using detail::parse_choice;
  using detail::parse_number;
  if (key == "pde") c.pde = parse_choice(key, value, {"laplacian", "elasticity"});
  else if (key == "young") c.young = parse_number<double>(key, value);
  else if (key == "poisson") c.poisson = parse_number<double>(key, value);
  else if (key == "dimension") c.dimension = parse_number<int>(key, value);
  else if (key == "components") c.components = parse_number<int>(key, value);
  else if (key == "mode") c.mode = parse_choice(key, value, {"p", "h"});
  else if (key == "fine_degree") c.fine_degree = parse_number<int>(key, value);
  else if (key == "coarse_degree") c.coarse_degree = parse_number<int>(key, value);
  else if (key == "macro_elements") c.macro_elements = parse_number<int>(key, value);
  else if (key == "smoother") c.smoother = parse_choice(key, value, {"jacobi", "chebyshev"});
  else if (key == "omega") c.omega = parse_number<double>(key, value);
  else if (key == "passes") c.passes = parse_number<int>(key, value);
  else if (key == "order") c.order = parse_number<int>(key, value);
  else if (key == "lower_factor") c.lower_factor = parse_number<double>(key, value);
  else if (key == "upper_factor") c.upper_factor = parse_number<double>(key, value);
  else if (key == "resolution") c.resolution = parse_number<int>(key, value);
  else if (key == "placement") c.placement = parse_choice(key, value, {"cell", "vertex"});
  else if (key == "singular_cutoff") c.singular_cutoff = parse_number<double>(key, value);
  else if (key == "omega_start") c.omega_start = parse_number<double>(key, value);
  else if (key == "omega_stop") c.omega_stop = parse_number<double>(key, value);
  else if (key == "omega_step") c.omega_step = parse_number<double>(key, value);
  else if (key == "sweep") c.sweep = parse_choice(key, value, {"omega", "order"});
  else if (key == "orders") c.orders = detail::parse_int_list(key, value);
  else if (key == "table") c.table = value;
  else if (key == "max_degree") c.max_degree = parse_number<int>(key, value);
  else if (key == "elements") c.elements = parse_number<int>(key, value);
  else if (key == "iterations") c.iterations = parse_number<int>(key, value);
  else if (key == "trials") c.trials = parse_number<int>(key, value);
  else if (key == "seed") c.seed = parse_number<unsigned>(key, value);
  else if (key == "output") c.output = value;
  else if (key == "format") c.format = parse_choice(key, value, {"csv", "json"});
  else if (key == "threads") c.threads = parse_number<int>(key, value);
  else throw ConfigError("unknown config key '" + key + "'");
}

/// Flat key = value text; '#' starts a comment, blank lines are ignored.
inline AnalysisConfig parse_config(std::istream& in) {
  AnalysisConfig c;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value, got '" + line + "'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError("config key '" + key + "': missing value");
    set_config_value(c, key, value);
  }
  return c;
}

inline AnalysisConfig parse_config(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

inline AnalysisConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

/// Consistency checks that need more than one key.
inline void validate(const AnalysisConfig& c) {
  const auto fail = [](const std::string& key, const std::string& why) {
    throw ConfigError("config key '" + key + "': " + why);
  };
  if (c.dimension < 1 || c.dimension > 3) fail("dimension", "must be 1, 2 or 3");
  const int implied = c.pde == "laplacian" ? 1 : c.dimension;
  if (c.components != 0 && c.components != implied)
    fail("components", "must be " + std::to_string(implied) + " for " + c.pde);
  if (c.pde == "elasticity" && !(c.poisson > 0.0 && c.poisson < 0.5)) fail("poisson", "must lie in (0, 0.5)");
  if (c.pde == "elasticity" && !(c.young > 0.0)) fail("young", "must be positive");
  if (c.fine_degree < 1) fail("fine_degree", "must be positive");
  if (c.mode == "p" && (c.coarse_degree < 1 || c.coarse_degree > c.fine_degree))
    fail("coarse_degree", "must lie in [1, fine_degree]");
  if (c.mode == "h" && c.macro_elements < 2) fail("macro_elements", "must be at least 2");
  if (c.smoother == "jacobi" && !(c.omega > 0.0)) fail("omega", "must be positive");
  if (c.passes < 0) fail("passes", "must be non-negative");
  if (c.order < 1) fail("order", "must be at least 1");
  if (!(c.lower_factor >= 0.0 && c.lower_factor < c.upper_factor)) fail("lower_factor", "must lie in [0, upper_factor)");
  if (c.resolution < 0) fail("resolution", "must be non-negative");
  if (!(c.singular_cutoff > 0.0)) fail("singular_cutoff", "must be positive");
  if (!(c.omega_step > 0.0)) fail("omega_step", "must be positive");
  if (c.omega_stop < c.omega_start) fail("omega_stop", "empty omega grid");
  for (int k : c.orders)
    if (k < 1) fail("orders", "every order must be at least 1");
  if (c.max_degree < 0) fail("max_degree", "must be non-negative");
  if (c.elements < 3) fail("elements", "must be at least 3");
  if (c.iterations < 20) fail("iterations", "must be at least 20");
  if (c.trials < 1) fail("trials", "must be at least 1");
  if (c.threads < 1) fail("threads", "must be at least 1");
}

inline WeakFormFactory weak_form(const AnalysisConfig& c) {
  if (c.pde == "elasticity") return elasticity_form(ElasticityModel(c.young, c.poisson), c.dimension);
  return laplacian_form(c.dimension);
}

inline SmootherSpec smoother_spec(const AnalysisConfig& c) {
  if (c.smoother == "chebyshev") return chebyshev(c.order, c.lower_factor, c.upper_factor, c.passes);
  return jacobi(c.omega, c.passes);
}

inline TwoGridSpec two_grid_spec(const AnalysisConfig& c) {
  validate(c);
  TwoGridSpec s;
  s.weak_form = weak_form(c);
  s.fine_degree = c.fine_degree;
  s.mode = c.mode == "h" ? TransferMode::h : TransferMode::p;
  s.coarse_degree = c.coarse_degree;
  s.macro_elements = c.macro_elements;
  s.smoother = smoother_spec(c);
  s.resolution = c.resolution;
  s.placement = parse_placement(c.placement);
  s.singular_cutoff = c.singular_cutoff;
  s.threads = c.threads;
  return s;
}

inline OmegaGrid omega_grid(const AnalysisConfig& c) { return {c.omega_start, c.omega_stop, c.omega_step}; }

inline OracleSettings oracle_settings(const AnalysisConfig& c) {
  OracleSettings o;
  o.elements = c.elements;
  o.iterations = c.iterations;
  o.trials = c.trials;
  o.seed = c.seed;
  return o;
}

}  // namespace lfa
