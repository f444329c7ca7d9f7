// Command-line driver: simulate, converge, stability-sweep, check-potential.

#include "ieq/commands.hpp"
#include "ieq/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct Common {
  std::string config_path;
  std::string output_dir;
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("config", common.config_path, "run configuration file")->required();
  cmd->add_option("--output-dir", common.output_dir, "override output_dir from the config");
}

ieq::RunConfig load(const Common& common) {
  ieq::RunConfig cfg = ieq::load_run_config(common.config_path);
  if (!common.output_dir.empty()) cfg.output_dir = common.output_dir;
  return cfg;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"IEQ time stepping for Cahn-Hilliard and Allen-Cahn flows"};
  app.require_subcommand(1);

  Common common;
  bool strict_energy = false;
  std::string dts_text;
  double dt_ref = 0.0;
  int assert_order = 0;
  int sweep_steps = 200;

  auto* simulate = app.add_subcommand("simulate", "run a simulation and write series.csv");
  add_common(simulate, common);
  simulate->add_flag("--strict-energy", strict_energy, "fail if the modified energy increases");

  auto* converge = app.add_subcommand("converge", "temporal refinement study");
  add_common(converge, common);
  converge->add_option("--dts", dts_text, "comma-separated halving step sizes")->required();
  converge->add_option("--dt-ref", dt_ref, "reference step size")->required();
  auto* order_opt = converge->add_option("--assert-order", assert_order, "expected order (1)");

  auto* sweep = app.add_subcommand("stability-sweep", "energy monotonicity over step sizes");
  add_common(sweep, common);
  sweep->add_option("--dts", dts_text, "comma-separated step sizes")->required();
  sweep->add_option("--steps", sweep_steps, "steps per step size")->default_val(200);

  auto* check = app.add_subcommand("check-potential", "sanity checks on the bulk potential");
  add_common(check, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ieq::kExitConfigError;
  }

  try {
    const ieq::RunConfig cfg = load(common);
    if (simulate->parsed()) {
      return ieq::cmd_simulate(cfg, {strict_energy}, std::cerr);
    }
    if (converge->parsed()) {
      std::optional<int> order;
      if (order_opt->count() > 0) order = assert_order;
      return ieq::cmd_converge(cfg, ieq::parse_real_list(dts_text), dt_ref, order, std::cerr);
    }
    if (sweep->parsed()) {
      return ieq::cmd_stability_sweep(cfg, ieq::parse_real_list(dts_text), sweep_steps, std::cerr);
    }
    return ieq::cmd_check_potential(cfg, std::cout);
  } catch (const ieq::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return ieq::kExitConfigError;
  }
}
