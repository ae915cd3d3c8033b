#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ftqec/builders.hpp"
#include "ftqec/codes.hpp"
#include "ftqec/noise.hpp"
#include "ftqec/stats.hpp"

namespace ftqec {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

enum class DiscardPolicy { exclude, count_as_failure };

struct ExperimentConfig {
  CodeKind code = CodeKind::color;
  int distance = 3;
  Protocol protocol = Protocol::steane_full;
  LogicalState initial_state = LogicalState::zero_L;
  std::vector<int> rounds = {0, 1, 2, 3};
  NoiseModel noise = NoiseModel::paper_default();
  uint64_t shots = 100000;
  uint64_t seed = 1;
  /// 0 picks default_workers().
  int workers = 0;
  DiscardPolicy discard_policy = DiscardPolicy::exclude;
  /// 1 discards failed auxiliary preparations; larger values retry them.
  int max_prep_attempts = 1;
  /// Adds wall-clock time to the result metadata (breaks byte-identical output).
  bool record_wall_time = false;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Checks code/protocol/state compatibility and ranges; throws std::invalid_argument.
void validate_config(const ExperimentConfig& config);

/// Parses a JSON config. Unknown keys are rejected.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& config);

struct RoundResult {
  int rounds = 0;
  FidelityEstimate estimate;
  std::map<std::string, uint64_t> discards;

  friend bool operator==(const RoundResult& a, const RoundResult& b) {
    return a.rounds == b.rounds && a.discards == b.discards && a.estimate.p_hat == b.estimate.p_hat &&
           a.estimate.n_kept == b.estimate.n_kept && a.estimate.n_discarded == b.estimate.n_discarded &&
           a.estimate.wilson_low == b.estimate.wilson_low && a.estimate.wilson_high == b.estimate.wilson_high &&
           a.estimate.z == b.estimate.z;
  }
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<RoundResult> rounds;
  std::string version = kVersion;
  std::optional<double> wall_time_s;

  const RoundResult& at_round(int r) const;
};

/// Seed used for the shots of one round count; a pure function of the config.
uint64_t round_seed(const ExperimentConfig& config, int rounds);

ExperimentResult run_experiment(const ExperimentConfig& config);

struct PresetOverrides {
  std::optional<uint64_t> shots;
  std::optional<uint64_t> seed;
  std::optional<int> workers;
  std::optional<NoiseModel> noise;
  std::optional<Protocol> flag_protocol;
};

std::vector<std::string> preset_names();
std::vector<ExperimentConfig> preset_configs(const std::string& name, const PresetOverrides& overrides = {});

enum class OutputFormat { json, csv };
OutputFormat parse_format(const std::string& text);

inline constexpr const char* kCsvHeader =
    "code,distance,protocol,initial_state,rounds,p_hat,wilson_low,wilson_high,n_kept,n_discarded";

std::string results_to_json(const std::vector<ExperimentResult>& results);
std::vector<ExperimentResult> results_from_json(const std::string& json_text);
std::string results_to_csv(const std::vector<ExperimentResult>& results);
/// Writes in the requested format; throws std::runtime_error on I/O failure.
void emit_results(const std::vector<ExperimentResult>& results, OutputFormat format, const std::string& path);

/// Runs the exhaustive single-fault check over the shipped experiment circuits.
/// Returns one line per circuit; `ok` is cleared on any failure.
std::vector<std::string> run_fault_tolerance_suite(bool& ok);

/// Color-code tables rendered as "signs | recovery" lines.
std::string render_color_tables();

}  // namespace ftqec
