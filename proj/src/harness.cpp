#include "ftqec/harness.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ftqec/engine.hpp"
#include "ftqec/protocol.hpp"
#include "ftqec/rng.hpp"

namespace ftqec {

using nlohmann::json;

namespace {

std::string to_string(DiscardPolicy p) { return p == DiscardPolicy::exclude ? "exclude" : "count_as_failure"; }

DiscardPolicy parse_discard_policy(const std::string& text) {
  if (text == "exclude") return DiscardPolicy::exclude;
  if (text == "count_as_failure") return DiscardPolicy::count_as_failure;
  throw std::invalid_argument("unknown discard_policy '" + text + "' (expected exclude or count_as_failure)");
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) throw std::invalid_argument("unknown key '" + item.key() + "' in " + where);
  }
}

template <typename T>
T get_as(const json& j, const char* key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(where + "." + key + ": " + e.what());
  }
}

NoiseModel parse_noise(const json& j) {
  static const std::set<std::string> keys = {"profile",     "p_1q",          "p_2q",
                                             "p_init",      "p_meas",        "p_mid_x",
                                             "p_mid_y",     "p_mid_z",       "t2_us",
                                             "idle_enabled", "mid_circuit_enabled", "spam_idle_us"};
  reject_unknown(j, keys, "noise");
  NoiseModel m;
  const std::string profile = j.contains("profile") ? get_as<std::string>(j, "profile", "noise") : "paper-default";
  if (profile == "paper-default") m = NoiseModel::paper_default();
  else if (profile == "noiseless") m = NoiseModel::noiseless();
  else if (profile == "two-qubit-only") m = NoiseModel::two_qubit_only(0.025);
  else throw std::invalid_argument("unknown noise profile '" + profile + "' (expected paper-default, noiseless or two-qubit-only)");

  auto num = [&](const char* key, double& field) {
    if (j.contains(key)) field = get_as<double>(j, key, "noise");
  };
  num("p_1q", m.p_1q);
  num("p_2q", m.p_2q);
  num("p_init", m.p_init);
  num("p_meas", m.p_meas);
  num("p_mid_x", m.p_mid_x);
  num("p_mid_y", m.p_mid_y);
  num("p_mid_z", m.p_mid_z);
  num("t2_us", m.t2_us);
  num("spam_idle_us", m.spam_idle_us);
  if (j.contains("idle_enabled")) m.idle_enabled = get_as<bool>(j, "idle_enabled", "noise");
  if (j.contains("mid_circuit_enabled")) m.mid_circuit_enabled = get_as<bool>(j, "mid_circuit_enabled", "noise");
  m.validate();
  return m;
}

json noise_json(const NoiseModel& m) {
  return json{{"p_1q", m.p_1q},
              {"p_2q", m.p_2q},
              {"p_init", m.p_init},
              {"p_meas", m.p_meas},
              {"p_mid_x", m.p_mid_x},
              {"p_mid_y", m.p_mid_y},
              {"p_mid_z", m.p_mid_z},
              {"t2_us", m.t2_us},
              {"idle_enabled", m.idle_enabled},
              {"mid_circuit_enabled", m.mid_circuit_enabled},
              {"spam_idle_us", m.spam_idle_us}};
}

ExperimentConfig config_from(const json& j) {
  static const std::set<std::string> keys = {"code",   "distance", "protocol", "initial_state", "rounds",
                                             "noise",  "shots",    "seed",     "workers",       "discard_policy",
                                             "max_prep_attempts", "record_wall_time"};
  reject_unknown(j, keys, "config");
  ExperimentConfig c;
  if (j.contains("code")) c.code = parse_code_kind(get_as<std::string>(j, "code", "config"));
  if (j.contains("distance")) c.distance = get_as<int>(j, "distance", "config");
  if (j.contains("protocol")) c.protocol = parse_protocol(get_as<std::string>(j, "protocol", "config"));
  if (j.contains("initial_state")) c.initial_state = parse_logical_state(get_as<std::string>(j, "initial_state", "config"));
  if (j.contains("rounds")) c.rounds = get_as<std::vector<int>>(j, "rounds", "config");
  if (j.contains("noise")) c.noise = parse_noise(j.at("noise"));
  if (j.contains("shots")) c.shots = get_as<uint64_t>(j, "shots", "config");
  if (j.contains("seed")) c.seed = get_as<uint64_t>(j, "seed", "config");
  if (j.contains("workers")) c.workers = get_as<int>(j, "workers", "config");
  if (j.contains("discard_policy")) c.discard_policy = parse_discard_policy(get_as<std::string>(j, "discard_policy", "config"));
  if (j.contains("max_prep_attempts")) c.max_prep_attempts = get_as<int>(j, "max_prep_attempts", "config");
  if (j.contains("record_wall_time")) c.record_wall_time = get_as<bool>(j, "record_wall_time", "config");
  return c;
}

json config_json(const ExperimentConfig& c) {
  return json{{"code", to_string(c.code)},
              {"distance", c.distance},
              {"protocol", to_string(c.protocol)},
              {"initial_state", to_string(c.initial_state)},
              {"rounds", c.rounds},
              {"noise", noise_json(c.noise)},
              {"shots", c.shots},
              {"seed", c.seed},
              {"workers", c.workers},
              {"discard_policy", to_string(c.discard_policy)},
              {"max_prep_attempts", c.max_prep_attempts},
              {"record_wall_time", c.record_wall_time}};
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct Tally {
  uint64_t kept = 0, successes = 0;
  std::map<std::string, uint64_t> discards;
};

// Runs one circuit over a shot range and folds the verdicts into `tally`.
void tally_shots(const Circuit& circuit, const Decoder& decoder, const ExperimentConfig& config, uint64_t seed,
                 uint64_t shots, uint64_t first_shot, int workers, Tally& tally) {
  if (shots == 0) return;
  std::vector<ShotVerdict> verdicts(shots);
  RunOptions options = protocol_run_options(circuit, decoder);
  options.max_prep_attempts = config.max_prep_attempts;
  for_each_shot(circuit, config.noise, shots, seed, workers, options,
                [&](uint64_t i, const ShotOutcome& o) { verdicts[i] = decoder.decode(circuit, o, config.initial_state); },
                first_shot);
  for (const auto& v : verdicts) {
    if (v.discarded) {
      ++tally.discards[to_string(v.reason)];
    } else {
      ++tally.kept;
      if (v.success) ++tally.successes;
    }
  }
}

}  // namespace

void validate_config(const ExperimentConfig& config) {
  if (config.rounds.empty()) throw std::invalid_argument("config.rounds must list at least one round count");
  for (int r : config.rounds) {
    if (r < 0) throw std::invalid_argument("round counts must be non-negative");
  }
  if (config.shots == 0) throw std::invalid_argument("config.shots must be positive");
  if (config.workers < 0) throw std::invalid_argument("config.workers must be >= 0 (0 = default)");
  if (config.max_prep_attempts < 1) throw std::invalid_argument("config.max_prep_attempts must be >= 1");
  config.noise.validate();
  for (int r : config.rounds) {
    ExperimentPlan plan{config.code, config.distance, config.protocol, config.initial_state, r, {}};
    if (config.protocol == Protocol::flag_postselect) plan.branches.assign(r, false);
    validate_plan(plan);
    if (config.protocol == Protocol::flag_postselect && r > 16) {
      throw std::invalid_argument("flag_postselect emulation supports at most 16 rounds");
    }
  }
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig c = config_from(j);
  validate_config(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const ExperimentConfig& config) { return config_json(config).dump(2); }

const RoundResult& ExperimentResult::at_round(int r) const {
  for (const auto& rr : rounds) {
    if (rr.rounds == r) return rr;
  }
  throw std::out_of_range("no result for round count " + std::to_string(r));
}

uint64_t round_seed(const ExperimentConfig& config, int rounds) {
  const std::string key = to_string(config.code) + "/" + std::to_string(config.distance) + "/" +
                          to_string(config.protocol) + "/" + to_string(config.initial_state) + "/" +
                          std::to_string(rounds);
  return splitmix64(config.seed ^ fnv1a(key));
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  const auto start = std::chrono::steady_clock::now();
  const int workers = config.workers > 0 ? config.workers : default_workers();
  const Decoder decoder(config.code, config.distance);

  ExperimentResult result;
  result.config = config;
  // The worker count does not affect results and is left out of the echo.
  result.config.workers = 0;
  for (int r : config.rounds) {
    const uint64_t seed = round_seed(config, r);
    Tally tally;
    if (config.protocol == Protocol::flag_postselect) {
      const uint64_t variants = uint64_t{1} << r;
      uint64_t first = 0;
      for (uint64_t b = 0; b < variants; ++b) {
        ExperimentPlan plan{config.code, config.distance, config.protocol, config.initial_state, r, {}};
        for (int k = 0; k < r; ++k) plan.branches.push_back(((b >> k) & 1) != 0);
        const Circuit circuit = compose_experiment(plan);
        const uint64_t n = config.shots * (b + 1) / variants - config.shots * b / variants;
        tally_shots(circuit, decoder, config, seed, n, first, workers, tally);
        first += n;
      }
    } else {
      const ExperimentPlan plan{config.code, config.distance, config.protocol, config.initial_state, r, {}};
      tally_shots(compose_experiment(plan), decoder, config, seed, config.shots, 0, workers, tally);
    }
    uint64_t discarded = 0;
    for (const auto& [reason, n] : tally.discards) discarded += n;
    const uint64_t kept = config.discard_policy == DiscardPolicy::exclude ? tally.kept : tally.kept + discarded;
    if (kept == 0) {
      throw std::runtime_error("every shot was discarded at round count " + std::to_string(r) +
                               "; raise shots or use discard_policy count_as_failure");
    }
    RoundResult rr;
    rr.rounds = r;
    rr.estimate = estimate_fidelity(tally.successes, kept, discarded);
    rr.discards = tally.discards;
    result.rounds.push_back(rr);
  }
  if (config.record_wall_time) {
    result.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return result;
}

std::vector<std::string> preset_names() { return {"fig3", "fig4", "figA6", "figA7"}; }

std::vector<ExperimentConfig> preset_configs(const std::string& name, const PresetOverrides& overrides) {
  std::vector<ExperimentConfig> out;
  auto add = [&](CodeKind code, int d, Protocol protocol, LogicalState state, std::vector<int> rounds,
                 const NoiseModel& noise) {
    ExperimentConfig c;
    c.code = code;
    c.distance = d;
    c.protocol = protocol;
    c.initial_state = state;
    c.rounds = std::move(rounds);
    c.noise = overrides.noise.value_or(noise);
    c.shots = overrides.shots.value_or(100000);
    c.seed = overrides.seed.value_or(1);
    c.workers = overrides.workers.value_or(0);
    out.push_back(c);
  };
  const std::vector<int> five = {0, 1, 2, 3, 4, 5};
  const std::vector<int> three = {0, 1, 2, 3};
  const Protocol flag = overrides.flag_protocol.value_or(Protocol::flag_adaptive);
  if (flag != Protocol::flag_adaptive && flag != Protocol::flag_postselect) {
    throw std::invalid_argument("flag protocol override must be flag_adaptive or flag_postselect");
  }
  if (name == "fig3") {
    for (CodeKind code : {CodeKind::bit_flip, CodeKind::phase_flip}) {
      for (int d : {3, 5}) add(code, d, Protocol::steane_half, LogicalState::zero_L, five, NoiseModel::paper_default());
    }
  } else if (name == "fig4" || name == "figA6") {
    const NoiseModel noise = name == "fig4" ? NoiseModel::paper_default() : NoiseModel::two_qubit_only(0.025);
    for (Protocol p : {Protocol::steane_full, flag}) {
      for (LogicalState s : {LogicalState::zero_L, LogicalState::plus_L}) add(CodeKind::color, 3, p, s, three, noise);
    }
  } else if (name == "figA7") {
    for (LogicalState s : {LogicalState::zero_L, LogicalState::plus_L}) {
      add(CodeKind::color, 3, Protocol::steane_half, s, five, NoiseModel::paper_default());
    }
  } else {
    throw std::invalid_argument("unknown preset '" + name + "' (expected fig3, fig4, figA6 or figA7)");
  }
  return out;
}

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  throw std::invalid_argument("unknown format '" + text + "' (expected json or csv)");
}

std::string results_to_json(const std::vector<ExperimentResult>& results) {
  json arr = json::array();
  for (const auto& res : results) {
    json rounds = json::array();
    for (const auto& rr : res.rounds) {
      const auto& e = rr.estimate;
      rounds.push_back(json{{"rounds", rr.rounds},
                            {"p_hat", e.p_hat},
                            {"wilson_low", e.wilson_low},
                            {"wilson_high", e.wilson_high},
                            {"z", e.z},
                            {"n_kept", e.n_kept},
                            {"n_discarded", e.n_discarded},
                            {"discard_fraction", e.discard_fraction()},
                            {"discards", rr.discards}});
    }
    json j{{"version", res.version}, {"config", config_json(res.config)}, {"results", rounds}};
    if (res.wall_time_s) j["wall_time_s"] = *res.wall_time_s;
    arr.push_back(j);
  }
  return json{{"schema_version", kSchemaVersion}, {"experiments", arr}}.dump(2) + "\n";
}

std::vector<ExperimentResult> results_from_json(const std::string& json_text) {
  const json doc = json::parse(json_text);
  if (doc.at("schema_version").get<int>() != kSchemaVersion) throw std::invalid_argument("unsupported schema_version");
  std::vector<ExperimentResult> out;
  for (const auto& j : doc.at("experiments")) {
    ExperimentResult res;
    res.version = j.at("version").get<std::string>();
    res.config = config_from(j.at("config"));
    for (const auto& r : j.at("results")) {
      RoundResult rr;
      rr.rounds = r.at("rounds").get<int>();
      rr.estimate.p_hat = r.at("p_hat").get<double>();
      rr.estimate.wilson_low = r.at("wilson_low").get<double>();
      rr.estimate.wilson_high = r.at("wilson_high").get<double>();
      rr.estimate.z = r.at("z").get<double>();
      rr.estimate.n_kept = r.at("n_kept").get<uint64_t>();
      rr.estimate.n_discarded = r.at("n_discarded").get<uint64_t>();
      rr.discards = r.at("discards").get<std::map<std::string, uint64_t>>();
      res.rounds.push_back(rr);
    }
    if (j.contains("wall_time_s")) res.wall_time_s = j.at("wall_time_s").get<double>();
    out.push_back(res);
  }
  return out;
}

std::string results_to_csv(const std::vector<ExperimentResult>& results) {
  std::ostringstream os;
  os << kCsvHeader << "\n";
  os << std::setprecision(17);
  for (const auto& res : results) {
    for (const auto& rr : res.rounds) {
      const auto& e = rr.estimate;
      os << to_string(res.config.code) << ',' << res.config.distance << ',' << to_string(res.config.protocol) << ','
         << to_string(res.config.initial_state) << ',' << rr.rounds << ',' << e.p_hat << ',' << e.wilson_low << ','
         << e.wilson_high << ',' << e.n_kept << ',' << e.n_discarded << "\n";
    }
  }
  return os.str();
}

void emit_results(const std::vector<ExperimentResult>& results, OutputFormat format, const std::string& path) {
  const std::string text = format == OutputFormat::json ? results_to_json(results) : results_to_csv(results);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<std::string> run_fault_tolerance_suite(bool& ok) {
  struct Case {
    CodeKind code;
    int distance;
    Protocol protocol;
    LogicalState state;
    int rounds;
  };
  const std::vector<Case> cases = {
      {CodeKind::color, 3, Protocol::steane_full, LogicalState::zero_L, 1},
      {CodeKind::color, 3, Protocol::steane_full, LogicalState::plus_L, 1},
      {CodeKind::bit_flip, 3, Protocol::steane_half, LogicalState::zero_L, 1},
      {CodeKind::phase_flip, 3, Protocol::steane_half, LogicalState::zero_L, 1},
      {CodeKind::color, 3, Protocol::flag_adaptive, LogicalState::zero_L, 1},
      {CodeKind::color, 3, Protocol::flag_adaptive, LogicalState::plus_L, 1},
  };
  ok = true;
  std::vector<std::string> lines;
  for (const auto& c : cases) {
    const Circuit circuit = compose_experiment({c.code, c.distance, c.protocol, c.state, c.rounds, {}});
    const Decoder decoder(c.code, c.distance);
    const FaultCheckReport rep = check_single_faults(circuit, decoder, c.state);
    std::ostringstream os;
    os << (rep.failures == 0 ? "ok   " : "FAIL ") << to_string(c.code) << " d=" << c.distance << ' '
       << to_string(c.protocol) << ' ' << to_string(c.state) << " rounds=" << c.rounds << ": " << rep.locations
       << " locations, " << rep.faults << " faults, " << rep.discarded << " discarded, " << rep.failures
       << " failures";
    lines.push_back(os.str());
    for (const auto& f : rep.failure_descriptions) lines.push_back("    " + f);
    if (rep.failures != 0) ok = false;
  }
  return lines;
}

std::string render_color_tables() {
  const StabilizerCode color = make_color_code();
  std::string out = "Lookup table (Z-type checks, X recoveries)\n";
  out += render_table(build_lookup_table(color, StabilizerType::Z));
  out += "\nFlag table (Z-type checks, X recoveries)\n";
  out += render_table(flag_lookup_table(StabilizerType::Z));
  return out;
}

}  // namespace ftqec
