// hsflow: equilibrium shapes for singularity-driven viscous flow between
// plates in an external potential field.
//
// Subcommands:
//   run <config>       solve, write boundary CSV / SVG / JSON report
//   verify <config>    solve and check the moment balance, report only
//   preset <id>        run a built-in parameter set
//   list-presets       show the built-in parameter sets
//
// Exit codes: 0 success, 2 malformed config or arguments, 3 every solve
// failed.  Partial sweep failures are reported per item and keep exit 0.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "heleshaw/errors.hpp"
#include "heleshaw/output.hpp"
#include "heleshaw/scenario.hpp"

namespace {

namespace fs = std::filesystem;
using heleshaw::scenario::RunResult;
using heleshaw::scenario::ScenarioConfig;

struct CommonFlags {
  std::string out_dir;
  int grid = 0;
  double tolerance = 0.0;
  bool no_svg = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool with_out) {
  if (with_out) {
    cmd->add_option("--out", flags.out_dir, "Output directory");
    cmd->add_flag("--no-svg", flags.no_svg, "Skip the SVG overlay");
  }
  cmd->add_option("--grid", flags.grid, "Boundary grid size (power of two)");
  cmd->add_option("--tolerance", flags.tolerance,
                  "Relative residual tolerance for verification");
}

void apply_common_flags(ScenarioConfig& config, const CommonFlags& flags) {
  if (!flags.out_dir.empty()) config.output.directory = flags.out_dir;
  if (flags.grid > 0) config.grid = flags.grid;
  if (flags.tolerance > 0.0) config.tolerance = flags.tolerance;
  if (flags.no_svg) config.output.svg = false;
}

// Solve and emit all files for a validated config.  Returns the exit code.
int execute_run(ScenarioConfig config, bool write_files) {
  using namespace heleshaw;

  const RunResult result = scenario::run_scenario(config);
  std::cout << output::report_text(result);

  if (write_files) {
    fs::path dir = config.output.directory.empty() ? fs::path(".")
                                                   : fs::path(config.output.directory);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
      std::cerr << "error: cannot create output directory '" << dir.string()
                << "'\n";
      return 2;
    }
    const std::string stem =
        config.output.stem.empty() ? config.solver : config.output.stem;
    const fs::path base = dir / stem;

    output::write_file(base.string() + ".csv", output::boundary_csv(result));
    std::cout << "wrote " << base.string() + ".csv" << '\n';
    if (config.output.svg) {
      output::write_file(base.string() + ".svg", output::svg_overlay(result));
      std::cout << "wrote " << base.string() + ".svg" << '\n';
    }
    output::write_file(base.string() + "_report.json",
                       output::report_json(result));
    std::cout << "wrote " << base.string() + "_report.json" << '\n';
    if (!result.relation.empty()) {
      output::write_file(base.string() + "_relation.csv",
                         output::relation_csv(result));
      std::cout << "wrote " << base.string() + "_relation.csv" << '\n';
    }
  }

  return scenario::all_items_failed(result) ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Equilibrium free-boundary shapes for viscous flow driven by "
      "sources, dipoles, and quadrupoles in external potential fields"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::string config_path, preset_id;
  CommonFlags run_flags, verify_flags, preset_flags;
  bool verify_during_run = false;

  auto* run_cmd = app.add_subcommand("run", "Solve a scenario config");
  run_cmd->add_option("config", config_path, "Scenario JSON file")
      ->required();
  add_common_flags(run_cmd, run_flags, true);
  run_cmd->add_flag("--verify", verify_during_run,
                    "Also check the moment balance of every item");

  auto* verify_cmd =
      app.add_subcommand("verify", "Check the moment balance of a scenario");
  verify_cmd->add_option("config", config_path, "Scenario JSON file")
      ->required();
  add_common_flags(verify_cmd, verify_flags, false);

  auto* preset_cmd = app.add_subcommand("preset", "Run a built-in scenario");
  preset_cmd->add_option("id", preset_id, "Preset id (see list-presets)")
      ->required();
  add_common_flags(preset_cmd, preset_flags, true);

  auto* list_cmd =
      app.add_subcommand("list-presets", "List built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  using namespace heleshaw;
  try {
    if (list_cmd->parsed()) {
      for (const auto& id : scenario::preset_ids()) {
        std::cout << scenario::preset_summary(id) << '\n';
      }
      return 0;
    }
    if (run_cmd->parsed()) {
      ScenarioConfig config = scenario::load_config(config_path);
      apply_common_flags(config, run_flags);
      if (verify_during_run) config.verify = true;
      return execute_run(std::move(config), true);
    }
    if (verify_cmd->parsed()) {
      ScenarioConfig config = scenario::load_config(config_path);
      apply_common_flags(config, verify_flags);
      config.verify = true;
      return execute_run(std::move(config), false);
    }
    if (preset_cmd->parsed()) {
      ScenarioConfig config = scenario::preset(preset_id);
      apply_common_flags(config, preset_flags);
      return execute_run(std::move(config), true);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
