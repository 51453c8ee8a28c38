// adiaprep: adiabatic state preparation, hold-phase measurement and
// vacuum diagnosis from the command line.
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "adiaprep/commands.hpp"

namespace {

void add_config_options(CLI::App* cmd, adiaprep::ConfigSource& source, std::string& config_path,
                        std::string& preset, std::string& out_dir) {
  cmd->add_option("config", config_path, "JSON configuration file");
  cmd->add_option("--preset", preset, "built-in preset: fig1a, fig1b, fig2");
  cmd->add_option("--set", source.overrides, "override a field, key=value (repeatable)");
  cmd->add_option("--out", out_dir, "output directory");
}

void finish_source(adiaprep::ConfigSource& source, const std::string& config_path, const std::string& preset,
                   const std::string& out_dir) {
  if (!config_path.empty()) source.config_path = config_path;
  if (!preset.empty()) source.preset = preset;
  if (!out_dir.empty()) source.output_dir = out_dir;
  source.env_seed = adiaprep::seed_from_environment();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adiabatic ground-state preparation and residual-excitation diagnosis"};
  app.require_subcommand(1);

  adiaprep::ConfigSource source;
  std::string config_path, preset, out_dir, parameter;
  std::vector<std::string> values;

  auto* run = app.add_subcommand("run", "prepare, hold, measure and write artifacts");
  add_config_options(run, source, config_path, preset, out_dir);

  auto* validate = app.add_subcommand("validate", "print the resolved configuration without running");
  add_config_options(validate, source, config_path, preset, out_dir);

  auto* sweep = app.add_subcommand("sweep", "repeat a run over values of T, dt or shots");
  add_config_options(sweep, source, config_path, preset, out_dir);
  sweep->add_option("--param", parameter, "T | dt | shots")->required();
  sweep->add_option("--values", values, "values in row order, e.g. 4.5 9 18 36 or 1/24")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : adiaprep::kExitConfigError;
  }
  finish_source(source, config_path, preset, out_dir);

  if (*run) return adiaprep::cmd_run(source, std::cout, std::cerr);
  if (*validate) return adiaprep::cmd_validate(source, std::cout, std::cerr);
  return adiaprep::cmd_sweep(source, parameter, values, std::cout, std::cerr);
}
