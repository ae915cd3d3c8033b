#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ftqec/harness.hpp"

using namespace ftqec;

namespace {

void write_or_print(const std::vector<ExperimentResult>& results, const std::string& format, const std::string& out) {
  const OutputFormat f = parse_format(format);
  if (out.empty()) {
    std::cout << (f == OutputFormat::json ? results_to_json(results) : results_to_csv(results));
  } else {
    emit_results(results, f, out);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fault-tolerant QEC circuit simulator"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string config_path, out_path, format = "json";
  uint64_t shots = 0, seed = 0;
  int workers = 0;

  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  run->add_option("--config", config_path, "Config file")->required();
  auto* run_shots = run->add_option("--shots", shots, "Shots per round count");
  auto* run_seed = run->add_option("--seed", seed, "Master seed");
  auto* run_workers = run->add_option("--workers", workers, "Worker threads (default: FTQEC_WORKERS or all cores)");
  run->add_option("--out", out_path, "Output file (default: stdout)");
  run->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::string preset_name, noise_profile, flag_protocol;
  auto* preset = app.add_subcommand("preset", "Run a figure preset");
  preset->add_option("name", preset_name, "fig3, fig4, figA6 or figA7")
      ->required()
      ->check(CLI::IsMember(preset_names()));
  auto* p_shots = preset->add_option("--shots", shots, "Shots per round count");
  auto* p_seed = preset->add_option("--seed", seed, "Master seed");
  auto* p_workers = preset->add_option("--workers", workers, "Worker threads");
  preset->add_option("--noise", noise_profile, "Replace the preset noise: noiseless or paper-default")
      ->check(CLI::IsMember({"noiseless", "paper-default"}));
  preset->add_option("--flag-protocol", flag_protocol, "flag_adaptive or flag_postselect")
      ->check(CLI::IsMember({"flag_adaptive", "flag_postselect"}));
  preset->add_option("--out", out_path, "Output file (default: stdout)");
  preset->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* tables = app.add_subcommand("tables", "Print the color-code decoding tables");
  auto* check = app.add_subcommand("check", "Run the exhaustive single-fault suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      ExperimentConfig config = load_config(config_path);
      if (*run_shots) config.shots = shots;
      if (*run_seed) config.seed = seed;
      if (*run_workers) config.workers = workers;
      write_or_print({run_experiment(config)}, format, out_path);
    } else if (*preset) {
      PresetOverrides o;
      if (*p_shots) o.shots = shots;
      if (*p_seed) o.seed = seed;
      if (*p_workers) o.workers = workers;
      if (noise_profile == "noiseless") o.noise = NoiseModel::noiseless();
      if (noise_profile == "paper-default") o.noise = NoiseModel::paper_default();
      if (!flag_protocol.empty()) o.flag_protocol = parse_protocol(flag_protocol);
      std::vector<ExperimentResult> results;
      for (const auto& c : preset_configs(preset_name, o)) results.push_back(run_experiment(c));
      write_or_print(results, format, out_path);
    } else if (*tables) {
      std::cout << render_color_tables();
    } else if (*check) {
      bool ok = false;
      for (const auto& line : run_fault_tolerance_suite(ok)) std::cout << line << "\n";
      std::cout << (ok ? "all circuits fault tolerant\n" : "fault-tolerance check FAILED\n");
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
