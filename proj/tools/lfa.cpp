#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lfa/cli.hpp"

namespace {

struct Overrides {
  std::string config;
  std::string output;
  std::string format;
  int resolution = -1;
  int threads = -1;
};

int run(const std::string& command, const Overrides& o) {
  lfa::AnalysisConfig c = o.config.empty() ? lfa::AnalysisConfig{} : lfa::load_config(o.config);
  if (!o.output.empty()) c.output = o.output;
  if (!o.format.empty()) lfa::set_config_value(c, "format", o.format);
  if (o.resolution >= 0) c.resolution = o.resolution;
  if (o.threads >= 0) c.threads = o.threads;
  lfa::validate(c);

  const auto report = lfa::run_command(command, c, std::cerr);
  const std::string text = report.render(c.format);
  if (c.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(c.output, std::ios::binary);
    if (!out) throw lfa::ConfigError("cannot write output file '" + c.output + "'");
    out << text;
  }
  return lfa::exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local Fourier analysis of p- and h-multigrid for high-order finite elements"};
  app.require_subcommand(1);
  Overrides overrides;
  for (const auto& name : lfa::command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", overrides.config, "key = value configuration file");
    sub->add_option("--output", overrides.output, "write the result here instead of stdout");
    sub->add_option("--format", overrides.format, "csv or json");
    sub->add_option("--resolution", overrides.resolution, "frequency samples per axis");
    sub->add_option("--threads", overrides.threads, "worker threads for frequency sweeps");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? lfa::exit_ok : lfa::exit_config;
  }

  try {
    return run(app.get_subcommands().front()->get_name(), overrides);
  } catch (const lfa::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lfa::exit_config;
  } catch (const lfa::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return lfa::exit_numerical;
  }
}
