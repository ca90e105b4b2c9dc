// Experiment front-end: validate configs, run experiments, list and run
// the bundled presets.  All interesting logic lives in the core library;
// this file only translates between the shell and ExperimentResult.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dsgrad/config.hpp"
#include "dsgrad/experiment.hpp"
#include "dsgrad/presets.hpp"

namespace {

struct OverrideFlags {
  std::string out_dir;
  std::int64_t seed = -1;  // sentinel: uint64 seeds are passed as decimal
  std::int64_t rounds = -1;

  dsgrad::RunOverrides to_overrides() const {
    dsgrad::RunOverrides o;
    if (!out_dir.empty()) o.out_dir = out_dir;
    if (seed >= 0) o.seed = static_cast<std::uint64_t>(seed);
    if (rounds >= 0) o.rounds = rounds;
    return o;
  }
};

void add_override_flags(CLI::App* cmd, OverrideFlags& flags) {
  cmd->add_option("--out", flags.out_dir,
                  "Output directory (used exactly as given)");
  cmd->add_option("--seed", flags.seed, "Override the config's seed");
  cmd->add_option("--rounds", flags.rounds, "Override the round count");
}

int do_validate(const std::string& path) {
  try {
    const dsgrad::ExperimentConfig cfg = dsgrad::load_experiment(path);
    const dsgrad::ValidationReport report = dsgrad::validate_experiment(cfg);
    std::cout << report.to_string();
    return report.passed() ? dsgrad::kExitOk : dsgrad::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dsgrad::kExitValidation;
  }
}

int do_run(const dsgrad::ExperimentConfig& cfg, const OverrideFlags& flags) {
  const dsgrad::RunOverrides overrides = flags.to_overrides();
  dsgrad::ExperimentResult result;
  try {
    result = dsgrad::run_experiment(cfg, overrides);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dsgrad::kExitAbort;
  }
  std::cout << result.report_text;
  try {
    const std::string dir = dsgrad::resolve_output_dir(cfg, overrides);
    dsgrad::write_artifacts(cfg, result, dir);
    std::cout << "artifacts: " << dir << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error writing artifacts: " << e.what() << "\n";
    return dsgrad::kExitAbort;
  }
  return result.exit_code;
}

int do_run_path(const std::string& path, const OverrideFlags& flags) {
  try {
    return do_run(dsgrad::load_experiment(path), flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dsgrad::kExitValidation;
  }
}

int do_presets() {
  for (const auto& p : dsgrad::list_presets())
    std::cout << p.name << "\n    " << p.description << "\n";
  return dsgrad::kExitOk;
}

int do_run_preset(const std::string& name, const OverrideFlags& flags) {
  try {
    return do_run(dsgrad::preset_config(name), flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dsgrad::kExitValidation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "dsgrad: distributed projected subgradient experiments over "
      "time-varying graphs"};
  app.require_subcommand(1);

  std::string validate_path;
  CLI::App* validate =
      app.add_subcommand("validate", "Check every assumption of a config");
  validate->add_option("path", validate_path, "Experiment config (JSON)")
      ->required();

  std::string run_path;
  OverrideFlags run_flags;
  CLI::App* run =
      app.add_subcommand("run", "Validate, run, and write artifacts");
  run->add_option("path", run_path, "Experiment config (JSON)")->required();
  add_override_flags(run, run_flags);

  app.add_subcommand("presets", "List the bundled experiments");

  std::string preset_name;
  OverrideFlags preset_flags;
  CLI::App* run_preset =
      app.add_subcommand("run-preset", "Run a bundled experiment by name");
  run_preset->add_option("name", preset_name, "Preset name")->required();
  add_override_flags(run_preset, preset_flags);

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) return do_validate(validate_path);
  if (run->parsed()) return do_run_path(run_path, run_flags);
  if (run_preset->parsed()) return do_run_preset(preset_name, preset_flags);
  return do_presets();
}
