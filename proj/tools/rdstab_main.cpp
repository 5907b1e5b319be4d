#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rdstab/errors.hpp"
#include "rdstab/runner.hpp"

namespace {

// "--u0 0.5:4" -> {0.5, 4}; a single number gives a degenerate range.
std::pair<double, double> parse_range(const std::string& text,
                                      const std::string& flag) {
  const size_t colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const double x = std::stod(text);
      return {x, x};
    }
    const double lo = std::stod(text.substr(0, colon));
    const double hi = std::stod(text.substr(colon + 1));
    return {lo, hi};
  } catch (const std::exception&) {
    throw rdstab::LoadError(flag + ": expected 'min:max', got '" + text + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rdstab: stability analysis and simulation of two-species "
               "reaction-diffusion systems"};
  app.require_subcommand(1);

  std::string config_path;
  bool json_output = false;
  bool svg_output = false;

  auto* analyze = app.add_subcommand(
      "analyze", "hypothesis checks, equilibrium, stability classification");
  std::optional<double> an_length;
  std::optional<int> an_modes;
  analyze->add_option("--config", config_path, "config file")->required();
  analyze->add_option("--length", an_length, "domain length for the spectrum");
  analyze->add_option("--modes", an_modes, "spectrum truncation");
  analyze->add_flag("--json", json_output, "emit a JSON document");

  auto* bounds = app.add_subcommand("bounds", "solution bounds C1, C2");
  std::string u0_text = "";
  std::string v0_text = "";
  bounds->add_option("--config", config_path, "config file")->required();
  bounds->add_option("--u0", u0_text, "initial u range min:max")->required();
  bounds->add_option("--v0", v0_text, "initial v range min:max")->required();
  bounds->add_flag("--json", json_output, "emit a JSON document");

  auto* simulate = app.add_subcommand("simulate", "integrate the dynamics");
  std::optional<std::string> sim_mode;
  std::optional<double> sim_L, sim_tend, sim_dtout;
  std::optional<int> sim_n;
  std::optional<std::string> sim_out;
  simulate->add_option("--config", config_path, "config file")->required();
  simulate->add_option("--mode", sim_mode, "ode or pde")
      ->check(CLI::IsMember({"ode", "pde"}));
  simulate->add_option("--L", sim_L, "domain length");
  simulate->add_option("--n", sim_n, "grid nodes");
  simulate->add_option("--tend", sim_tend, "final time");
  simulate->add_option("--dt-out", sim_dtout, "snapshot interval");
  simulate->add_option("--out", sim_out, "output directory");
  simulate->add_flag("--svg", svg_output, "also write plot.svg");

  auto* sweep = app.add_subcommand("sweep", "batch runs along one parameter");
  std::string axis;
  std::vector<double> values;
  std::optional<std::string> sweep_out;
  sweep->add_option("--config", config_path, "config file")->required();
  sweep->add_option("--axis", axis, "model parameter to vary")->required();
  sweep->add_option("--values", values, "comma-separated values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--out", sweep_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  return rdstab::run_guarded(
      [&]() -> int {
        rdstab::RunConfig cfg = rdstab::load_config(config_path);
        if (analyze->parsed()) {
          if (an_length) cfg.L = *an_length;
          if (an_modes) cfg.modes = *an_modes;
          return rdstab::cmd_analyze(cfg, json_output, std::cout);
        }
        if (bounds->parsed()) {
          return rdstab::cmd_bounds(cfg, parse_range(u0_text, "--u0"),
                                    parse_range(v0_text, "--v0"), json_output,
                                    std::cout);
        }
        if (simulate->parsed()) {
          if (sim_mode) cfg.mode = *sim_mode;
          if (sim_L) cfg.L = *sim_L;
          if (sim_n) cfg.n = *sim_n;
          if (sim_tend) cfg.t_end = *sim_tend;
          if (sim_dtout) cfg.dt_out = *sim_dtout;
          if (sim_out) cfg.out_dir = *sim_out;
          return rdstab::cmd_simulate(cfg, svg_output, std::cout);
        }
        if (sweep_out) cfg.out_dir = *sweep_out;
        return rdstab::cmd_sweep(cfg, axis, values, std::cout);
      },
      std::cerr);
}
